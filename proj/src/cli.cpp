#include "gradim/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "gradim/gallery.hpp"
#include "gradim/monoid.hpp"
#include "gradim/sagbi.hpp"
#include "gradim/series.hpp"

namespace gradim {

namespace {

class InputError : public Error {
public:
    using Error::Error;
};

std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    return in;
}

template <typename Reader>
auto read_file(const std::string& path, Reader reader)
{
    std::ifstream in = open_input(path);
    try {
        return reader(in);
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::string join(const GradedSeries& h)
{
    std::string out;
    for (std::size_t i = 0; i < h.size(); ++i)
        out += (i ? " " : "") + h[i].get_str();
    return out;
}

std::string fixed(double x)
{
    if (std::isinf(x))
        return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

// Key/value report: `key=value` lines in machine mode, an aligned table
// otherwise.
class Report {
public:
    explicit Report(bool machine) : machine_(machine) {}
    void add(std::string key, std::string value) { rows_.emplace_back(std::move(key), std::move(value)); }
    void print(std::ostream& os) const
    {
        std::size_t width = 0;
        for (const auto& [k, v] : rows_)
            width = std::max(width, k.size());
        for (const auto& [k, v] : rows_) {
            if (machine_)
                os << k << '=' << v << '\n';
            else
                os << k << std::string(width - k.size() + 2, ' ') << v << '\n';
        }
    }

private:
    bool machine_;
    std::vector<std::pair<std::string, std::string>> rows_;
};

std::vector<std::uint32_t> parse_denominator_spec(const std::string& spec)
{
    std::vector<std::uint32_t> out;
    std::string token;
    auto flush = [&] {
        if (token.empty())
            return;
        if (token.size() > 6 || token.find_first_not_of("0123456789") != std::string::npos || std::stoul(token) == 0)
            throw InputError("denominator exponents must be positive integers, found '" + token + "'");
        out.push_back(static_cast<std::uint32_t>(std::stoul(token)));
        token.clear();
    };
    for (char c : spec) {
        if (c == ',' || c == ' ')
            flush();
        else
            token += c;
    }
    flush();
    return out;
}

void add_classification(Report& r, const HSClassification& c)
{
    r.add("verdict", verdict_name(c.verdict));
    r.add("reason", c.reason == NonHSReason::RadiusBelowOne  ? "radius"
                    : c.reason == NonHSReason::PoleUnbounded ? "pole-unbounded"
                                                             : "none");
    r.add("pole_order", c.pole_order ? std::to_string(*c.pole_order) : "none");
    r.add("numerator", c.fit ? format_polynomial_in_t(c.fit->numerator) : "none");
    r.add("denominator", c.fit ? format_denominator(c.fit->denominator_exponents) : "none");
    r.add("radius_estimate", c.radius ? fixed(*c.radius) : "none");
    r.add("evidence", c.evidence);
}

// Random monomial algebras: fitted pole order against lattice rank, and the
// cumulative count against the lattice-point bound (N + 1)^rank.
int run_proptest(std::uint64_t seed, std::size_t count, bool machine, std::ostream& out)
{
    std::mt19937_64 rng(seed);
    std::size_t failures = 0;
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
        const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        std::vector<ExponentVector> gens;
        while (gens.size() < m) {
            const unsigned deg = std::uniform_int_distribution<unsigned>(1, 4)(rng);
            std::vector<Exponent> e(n, 0);
            for (unsigned i = 0; i < deg; ++i)
                ++e[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)];
            gens.emplace_back(std::move(e));
        }
        const MonoidPresentation monoid(n, gens);
        const std::size_t N = 60;
        const GradedSeries h = hilbert_function(monoid, N);
        const std::size_t rank = monoid_rank(monoid);
        const auto degrees = monoid.generator_degrees();
        const auto fit = fit_first(h, default_denominator_candidates(degrees));
        const bool pole_ok = fit && pole_order_at_one(*fit) == rank;

        const GrowthTable a = growth_table(h);
        mpz_class bound;
        mpz_ui_pow_ui(bound.get_mpz_t(), N + 1, rank);
        const bool bound_ok = a[N] <= bound;
        if (!pole_ok || !bound_ok) {
            ++failures;
            out << (machine ? "failure=" : "failure  ") << "instance " << k << " n=" << n << " rank=" << rank
                << " pole=" << (fit ? std::to_string(pole_order_at_one(*fit)) : "none")
                << " bound=" << (bound_ok ? "ok" : "violated") << '\n';
        }
    }
    Report r(machine);
    r.add("seed", std::to_string(seed));
    r.add("instances", std::to_string(count));
    r.add("failures", std::to_string(failures));
    r.print(out);
    return failures == 0 ? 0 : 1;
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Hilbert functions, Poincare series and dimensions of graded algebras", "gradim"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "table";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "machine"}));

    std::string file;
    std::size_t n = 60, d_bound = 10, growth = 200, dmax = 10, count = 1000;
    std::optional<std::size_t> n_opt, d_opt, g_opt;
    std::optional<unsigned> exponent;
    std::vector<long> sequence;
    std::string denom, case_id = "all";
    std::uint64_t seed = 1;

    auto* hilbert = app.add_subcommand("hilbert", "Print the Hilbert function of a monoid file");
    hilbert->add_option("file", file, "Monoid file")->required();
    hilbert->add_option("-N", n, "Truncation degree")->capture_default_str();

    auto* dim = app.add_subcommand("dim", "Dimension report for a monoid file");
    dim->add_option("file", file, "Monoid file")->required();
    dim->add_option("-N", n, "Truncation for the rational fit")->capture_default_str();
    dim->add_option("-G", growth, "Truncation for the growth slope")->capture_default_str();

    auto* sagbi = app.add_subcommand("sagbi", "Degree-truncated initial algebra of a subalgebra file");
    sagbi->add_option("file", file, "Subalgebra file")->required();
    sagbi->add_option("-D", d_bound, "Degree bound")->capture_default_str();

    auto* fit = app.add_subcommand("fit", "Fit a series file against a denominator");
    fit->add_option("file", file, "Series file")->required();
    fit->add_option("--denom", denom, "Denominator exponents, e.g. 1,1 for (1 - t)^2")->required();

    auto* classify = app.add_subcommand("classify", "Hilbert-Serre classification of a series file");
    classify->add_option("file", file, "Series file")->required();
    classify->add_option("--dmax", dmax, "Largest pole order tested")->capture_default_str();

    auto* gallery = app.add_subcommand("gallery", "Run built-in example cases");
    gallery->add_option("id", case_id, "Case id or 'all'")->capture_default_str();
    gallery->add_option("-N", n_opt, "Override the truncation N");
    gallery->add_option("-D", d_opt, "Override the degree bound D");
    gallery->add_option("-d", exponent, "Override the exponent d");
    gallery->add_option("-G", g_opt, "Override the growth truncation G");
    gallery->add_option("--sequence", sequence, "Coefficient sequence for the idealization case");

    auto* partition = app.add_subcommand("partition", "Print partition numbers p(0..N)");
    partition->add_option("-N", n, "Largest n")->required();

    auto* proptest = app.add_subcommand("proptest", "Randomized pole-order and growth-bound checks");
    proptest->add_option("--seed", seed, "Random seed")->capture_default_str();
    proptest->add_option("--count", count, "Number of random algebras")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "gradim: " << e.what() << '\n';
        return 2;
    }

    const bool machine = format == "machine";
    try {
        if (*hilbert) {
            const MonoidFile mf = read_file(file, read_monoid);
            const GradedSeries h = hilbert_function(mf.monoid, n, EnumerationLimits::from_environment());
            if (machine) {
                Report r(true);
                r.add("truncation", std::to_string(n));
                r.add("series", join(h));
                r.print(out);
            } else {
                out << join(h) << '\n';
            }
            return 0;
        }
        if (*dim) {
            const MonoidFile mf = read_file(file, read_monoid);
            DimensionOptions opts;
            opts.growth_truncation = growth;
            opts.limits = EnumerationLimits::from_environment();
            const DimensionReport d = dimension_report(mf.monoid, n, opts);
            Report r(machine);
            r.add("krull_dim", std::to_string(d.krull_dim));
            r.add("trdeg", std::to_string(d.trdeg));
            r.add("pole_order", d.pole_order ? std::to_string(*d.pole_order) : "none");
            r.add("fit", d.fit ? format_rational_series(*d.fit) : "none");
            r.add("gk_estimate", fixed(d.gk_estimate));
            r.add("gk_status",
                  d.gk_status == GrowthStatus::WithinTolerance ? "within-tolerance" : "unknown-at-truncation");
            r.add("all_equal", d.all_equal ? "yes" : "no");
            r.print(out);
            return 0;
        }
        if (*sagbi) {
            const SubalgebraFile sf = read_file(file, read_subalgebra);
            const PoincareComparison pc = verify_poincare_equality(sf.subalgebra, d_bound, SearchLimits::from_environment());
            const auto& t = pc.truncation;
            Report r(machine);
            r.add("degree_bound", std::to_string(d_bound));
            std::string gens;
            for (const auto& g : t.new_generators)
                gens += (gens.empty() ? "" : ", ") + format_monomial(g.monomial, sf.vars);
            r.add("generators", gens);
            r.add("generator_degrees", [&] {
                std::string s;
                for (const auto& g : t.new_generators)
                    s += (s.empty() ? "" : " ") + std::to_string(g.degree);
                return s;
            }());
            r.add("stabilized", t.stabilized_at ? "at " + std::to_string(*t.stabilized_at) : "no");
            r.add("dimensions", [&] {
                std::string s;
                for (std::size_t v : pc.subalgebra_dims)
                    s += (s.empty() ? "" : " ") + std::to_string(v);
                return s;
            }());
            r.add("poincare_equal", pc.equal ? "yes" : "no");
            r.print(out);
            return pc.equal ? 0 : 1;
        }
        if (*fit) {
            const GradedSeries h = read_file(file, read_series);
            const auto d = parse_denominator_spec(denom);
            if (d.empty())
                throw InputError("empty denominator");
            const std::size_t guard = default_guard(d);
            if (h.truncation() < 2 * guard)
                throw InputError("series has truncation " + std::to_string(h.truncation()) + ", fitting needs at least " +
                                 std::to_string(2 * guard));
            const auto rs = fit_rational(h, d, guard);
            Report r(machine);
            r.add("fit", rs ? "yes" : "no");
            r.add("numerator", rs ? format_polynomial_in_t(rs->numerator) : "none");
            r.add("denominator", format_denominator(d));
            r.add("pole_order", rs ? std::to_string(pole_order_at_one(*rs)) : "none");
            r.add("guard", std::to_string(guard));
            r.print(out);
            return rs ? 0 : 1;
        }
        if (*classify) {
            const GradedSeries h = read_file(file, read_series);
            Report r(machine);
            add_classification(r, classify_hilbert_serre(h, default_denominator_candidates(), dmax));
            r.print(out);
            return 0;
        }
        if (*gallery) {
            CaseParams params;
            params.truncation = n_opt;
            params.degree_bound = d_opt;
            params.exponent = exponent;
            params.growth = g_opt;
            if (!sequence.empty())
                params.sequence = sequence;
            std::vector<std::string> ids = case_id == "all" ? gallery_ids() : std::vector<std::string>{case_id};
            if (case_id != "all")
                (void)find_case(case_id);
            bool all_passed = true;
            for (const auto& id : ids) {
                const RunReport rep = run_case(id, params);
                out << (machine ? format_report_machine(rep) : format_report(rep));
                all_passed = all_passed && rep.passed();
            }
            return all_passed ? 0 : 1;
        }
        if (*partition) {
            const GradedSeries p = partition_series(n);
            if (machine) {
                Report r(true);
                r.add("partitions", join(p));
                r.print(out);
            } else {
                out << join(p) << '\n';
            }
            return 0;
        }
        if (*proptest)
            return run_proptest(seed, count, machine, out);
    } catch (const InputError& e) {
        err << "gradim: " << e.what() << '\n';
        return 2;
    } catch (const PreconditionError& e) {
        err << "gradim: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        err << "gradim: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "gradim: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace gradim
