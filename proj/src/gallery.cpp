#include "gradim/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <regex>
#include <sstream>

namespace gradim {

namespace detail {
struct EmbeddedCase {
    const char* name;
    const char* text;
};
extern const EmbeddedCase embedded_cases[];
extern const std::size_t embedded_case_count;
} // namespace detail

namespace {

const std::vector<std::string> kCaseOrder{"ex-3.2-2", "ex-3.2-3", "ex-3.2-5", "ex-5.2", "ex-5.3", "ex-6.1",
                                          "ex-6.2",   "ex-6.3",   "ex-6.4-d", "ex-6.5", "ex-6.6"};

std::string trim(std::string_view s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

std::size_t parse_count(const std::string& v, std::size_t line, std::size_t column)
{
    if (v.empty() || v.size() > 9 || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError(line, column, "expected a non-negative integer, found '" + v + "'");
    return std::stoul(v);
}

std::vector<long> parse_sequence(const std::string& v, std::size_t line, std::size_t column)
{
    std::istringstream is(v);
    std::vector<long> out;
    for (std::string w; is >> w;) {
        if (w.size() > 18 || !std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw ParseError(line, column, "sequence entries must be non-negative integers, found '" + w + "'");
        out.push_back(std::stol(w));
    }
    if (out.empty())
        throw ParseError(line, column, "empty sequence");
    return out;
}

} // namespace

GalleryCase parse_case(std::string_view text)
{
    GalleryCase c;
    std::istringstream is{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty() || line.front() == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(lineno, 1, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        const std::size_t vcol = raw.find('=') + 2;

        if (key == "id") {
            c.id = value;
        } else if (key == "title") {
            c.title = value;
        } else if (key == "anchor") {
            c.anchor = value;
        } else if (key == "note") {
            c.notes.push_back(value);
        } else if (key == "param.N") {
            c.defaults.truncation = parse_count(value, lineno, vcol);
        } else if (key == "param.D") {
            c.defaults.degree_bound = parse_count(value, lineno, vcol);
        } else if (key == "param.d") {
            c.defaults.exponent = static_cast<unsigned>(parse_count(value, lineno, vcol));
        } else if (key == "param.G") {
            c.defaults.growth = parse_count(value, lineno, vcol);
        } else if (key == "param.sequence") {
            c.defaults.sequence = parse_sequence(value, lineno, vcol);
        } else if (key.rfind("expect.", 0) == 0) {
            Expectation e;
            e.key = key.substr(7);
            const std::string suffix = "@default";
            if (e.key.size() > suffix.size() && e.key.ends_with(suffix)) {
                e.key.resize(e.key.size() - suffix.size());
                e.default_only = true;
            }
            const auto bar = value.rfind('|');
            if (bar == std::string::npos)
                throw ParseError(lineno, vcol, "expectation needs '| stated', '| definition' or '| computed'");
            e.basis = trim(value.substr(bar + 1));
            e.value = trim(value.substr(0, bar));
            if (e.basis != "stated" && e.basis != "definition" && e.basis != "computed")
                throw ParseError(lineno, vcol + bar, "unknown basis '" + e.basis + "'");
            c.expected.push_back(std::move(e));
        } else {
            throw ParseError(lineno, 1, "unknown key '" + key + "'");
        }
    }
    if (c.id.empty())
        throw ParseError(lineno + 1, 1, "case has no id");
    if (c.anchor.empty())
        throw ParseError(lineno + 1, 1, "case " + c.id + " has no anchor");
    return c;
}

const std::vector<GalleryCase>& gallery_cases()
{
    static const std::vector<GalleryCase> cases = [] {
        std::vector<GalleryCase> parsed;
        for (std::size_t i = 0; i < detail::embedded_case_count; ++i)
            parsed.push_back(parse_case(detail::embedded_cases[i].text));
        std::vector<GalleryCase> ordered;
        for (const auto& id : kCaseOrder) {
            const auto it = std::find_if(parsed.begin(), parsed.end(), [&id](const GalleryCase& c) { return c.id == id; });
            if (it == parsed.end())
                throw Error("no fixture for gallery case " + id);
            ordered.push_back(*it);
        }
        return ordered;
    }();
    return cases;
}

std::vector<std::string> gallery_ids()
{
    return kCaseOrder;
}

const GalleryCase& find_case(std::string_view id)
{
    for (const auto& c : gallery_cases())
        if (c.id == id)
            return c;
    std::string valid;
    for (const auto& v : kCaseOrder)
        valid += (valid.empty() ? "" : ", ") + v;
    throw PreconditionError("unknown gallery case '" + std::string(id) + "'; valid ids: " + valid);
}

namespace {

CaseParams merged(const GalleryCase& c, const CaseParams& p)
{
    CaseParams m = c.defaults;
    if (p.truncation)
        m.truncation = p.truncation;
    if (p.degree_bound)
        m.degree_bound = p.degree_bound;
    if (p.exponent)
        m.exponent = p.exponent;
    if (p.growth)
        m.growth = p.growth;
    if (p.sequence)
        m.sequence = p.sequence;
    return m;
}

std::size_t need(const std::optional<std::size_t>& v, const char* name, std::string_view id)
{
    if (!v)
        throw PreconditionError("case " + std::string(id) + " needs parameter " + name);
    return *v;
}

// x * y^j for j in [first, last], as exponent vectors in N^2.
std::vector<ExponentVector> xy_family(unsigned first, std::size_t last)
{
    std::vector<ExponentVector> g;
    for (std::size_t j = first; j <= last; ++j)
        g.push_back(ExponentVector({1, static_cast<Exponent>(j)}));
    return g;
}

SubalgebraPresentation rs_example()
{
    const VariableNames xy({"x", "y"});
    return SubalgebraPresentation({parse_polynomial("x + y", xy), parse_polynomial("x*y", xy),
                                   parse_polynomial("x*y^2", xy)},
                                  WeightVector::ones(2), MonomialOrder::lex(2));
}

} // namespace

CaseInput build_case(std::string_view id, const CaseParams& params)
{
    const GalleryCase& c = find_case(id);
    const CaseParams p = merged(c, params);

    if (id == "ex-3.2-2" || id == "ex-3.2-3" || id == "ex-6.2") {
        // Materialized through the larger of the fit and growth truncations.
        const std::size_t top = std::max(need(p.truncation, "N", id), p.growth.value_or(0));
        if (top < 1)
            throw PreconditionError("case " + std::string(id) + " needs N >= 1");
        if (id == "ex-3.2-2")
            return MonoidPresentation(2, xy_family(0, top - 1));
        return MonoidPresentation(2, xy_family(1, top - 1));
    }
    if (id == "ex-3.2-5") {
        const std::size_t n = need(p.truncation, "N", id);
        if (n < 1)
            throw PreconditionError("case ex-3.2-5 needs N >= 1");
        std::vector<ExponentVector> g;
        for (std::size_t i = 0; i < n; ++i)
            g.push_back(ExponentVector::unit(n, i, static_cast<Exponent>(i + 1)));
        return MonoidPresentation(n, std::move(g));
    }
    if (id == "ex-5.2" || id == "ex-6.1")
        return rs_example();
    if (id == "ex-5.3")
        return pure_power_free_example();
    if (id == "ex-6.3") {
        if (p.sequence) {
            if (p.sequence->front() != 1)
                throw PreconditionError("an idealization sequence starts with a_0 = 1");
            // Entries past the given ones are zero up to N.
            std::vector<long> seq = *p.sequence;
            if (p.truncation && seq.size() < *p.truncation + 1)
                seq.resize(*p.truncation + 1, 0);
            return SeriesInput{GradedSeries::from_integers(seq), true};
        }
        const std::size_t n = need(p.truncation, "N", id);
        std::vector<mpz_class> h;
        for (std::size_t i = 0; i <= n; ++i)
            h.emplace_back(static_cast<unsigned long>(i + 1));
        return SeriesInput{GradedSeries(std::move(h)), true};
    }
    if (id == "ex-6.4-d") {
        if (!p.exponent || *p.exponent == 0)
            throw PreconditionError("case ex-6.4-d needs d >= 1");
        return SeriesInput{power_sum_series(*p.exponent, need(p.truncation, "N", id)), false};
    }
    if (id == "ex-6.5") {
        std::vector<mpz_class> h;
        for (std::size_t i = 0; i <= need(p.truncation, "N", id); ++i) {
            mpz_class v;
            mpz_ui_pow_ui(v.get_mpz_t(), 2, i);
            h.push_back(v + 1);
        }
        return SeriesInput{GradedSeries(std::move(h)), false};
    }
    if (id == "ex-6.6")
        return SeriesInput{partition_series(need(p.truncation, "N", id)), false};
    throw PreconditionError("case " + std::string(id) + " has no builder");
}

std::optional<std::string> RunReport::field(std::string_view key) const
{
    for (const auto& [k, v] : fields)
        if (k == key)
            return v;
    return std::nullopt;
}

bool RunReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const FieldCheck& c) { return c.ok; });
}

namespace {

std::string head_of(const GradedSeries& h, std::size_t k = 16)
{
    std::string out;
    for (std::size_t i = 0; i < std::min(k, h.size()); ++i)
        out += (i ? " " : "") + h[i].get_str();
    return out;
}

std::string fixed(double x, int digits = 6)
{
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

std::string yes_no(bool b)
{
    return b ? "yes" : "no";
}

std::string reason_name(NonHSReason r)
{
    switch (r) {
    case NonHSReason::RadiusBelowOne:
        return "radius";
    case NonHSReason::PoleUnbounded:
        return "pole-unbounded";
    case NonHSReason::None:
        break;
    }
    return "none";
}

// Longest m such that the generators are exactly x*y^j for j = 0..m.
std::string xy_run(const std::vector<InitialGenerator>& gens)
{
    for (std::size_t j = 0; j < gens.size(); ++j)
        if (gens[j].monomial != ExponentVector({1, static_cast<Exponent>(j)}))
            return "irregular";
    return gens.empty() ? "empty" : "0.." + std::to_string(gens.size() - 1);
}

std::string stabilization(const InitialAlgebraTruncation& t)
{
    return t.stabilized_at ? "at " + std::to_string(*t.stabilized_at) : "no";
}

std::string generator_list(const InitialAlgebraTruncation& t, const VariableNames& vars)
{
    std::string out;
    for (const auto& g : t.new_generators)
        out += (out.empty() ? "" : ", ") + format_monomial(g.monomial, vars);
    return out;
}

std::string substitute(const std::string& value, const CaseParams& p)
{
    static const std::regex placeholder(R"(\{([NDdG])([+-][0-9]+)?\})");
    std::string out;
    auto begin = std::sregex_iterator(value.begin(), value.end(), placeholder);
    std::size_t last = 0;
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
        const auto& m = *it;
        out += value.substr(last, m.position() - last);
        long base = 0;
        switch (m[1].str()[0]) {
        case 'N':
            base = static_cast<long>(p.truncation.value_or(0));
            break;
        case 'D':
            base = static_cast<long>(p.degree_bound.value_or(0));
            break;
        case 'd':
            base = static_cast<long>(p.exponent.value_or(0));
            break;
        default:
            base = static_cast<long>(p.growth.value_or(0));
        }
        if (m[2].matched)
            base += std::stol(m[2].str());
        out += std::to_string(base);
        last = m.position() + m.length();
    }
    return out + value.substr(last);
}

bool matches(const std::string& key, const std::string& expected, const std::string& actual)
{
    const auto pm = expected.find("+-");
    if (pm != std::string::npos) {
        try {
            const double want = std::stod(expected.substr(0, pm));
            const double tol = std::stod(expected.substr(pm + 2));
            const double got = std::stod(actual);
            return std::fabs(got - want) <= tol;
        } catch (const std::exception&) {
            return false;
        }
    }
    if (key == "head")
        return actual.rfind(expected, 0) == 0 && (actual.size() == expected.size() || actual[expected.size()] == ' ');
    return expected == actual;
}

void run_monoid(RunReport& r, const MonoidPresentation& m, const CaseParams& p, bool partition)
{
    const std::size_t n = *p.truncation;
    r.fields.emplace_back("rank", std::to_string(monoid_rank(m)));
    if (partition) {
        const GradedSeries h = hilbert_function(m, n, EnumerationLimits::from_environment());
        r.fields.emplace_back("head", head_of(h));
        r.fields.emplace_back("matches_partition_series", yes_no(h == partition_series(n)));
        const auto fit = fit_first(h, default_denominator_candidates());
        r.fields.emplace_back("fit", fit ? format_rational_series(*fit) : "none");
        return;
    }
    DimensionOptions opts;
    opts.limits = EnumerationLimits::from_environment();
    if (p.growth)
        opts.growth_truncation = *p.growth;
    const DimensionReport d = dimension_report(m, n, opts);
    r.fields.emplace_back("head", head_of(d.series));
    r.fields.emplace_back("numerator", d.fit ? format_polynomial_in_t(d.fit->numerator) : "none");
    r.fields.emplace_back("denominator", d.fit ? format_denominator(d.fit->denominator_exponents) : "none");
    r.fields.emplace_back("pole_order", d.pole_order ? std::to_string(*d.pole_order) : "none");
    r.fields.emplace_back("krull_dim", std::to_string(d.krull_dim));
    r.fields.emplace_back("trdeg", std::to_string(d.trdeg));
    r.fields.emplace_back("gk_slope", fixed(d.gk_estimate));
    r.fields.emplace_back("gk_status",
                          d.gk_status == GrowthStatus::WithinTolerance ? "within-tolerance" : "unknown-at-truncation");
    r.fields.emplace_back("all_equal", yes_no(d.all_equal));
    r.fields.emplace_back("verdict", d.fit ? "HilbertSerre" : "UnknownAtTruncation");
}

void run_series(RunReport& r, const SeriesInput& in)
{
    const HSClassification c = classify_hilbert_serre(in.series, default_denominator_candidates(), 10);
    r.fields.emplace_back("head", head_of(in.series));
    if (in.idealization)
        r.fields.emplace_back("krull_dim", "0");
    r.fields.emplace_back("numerator", c.fit ? format_polynomial_in_t(c.fit->numerator) : "none");
    r.fields.emplace_back("denominator", c.fit ? format_denominator(c.fit->denominator_exponents) : "none");
    r.fields.emplace_back("pole_order", c.pole_order ? std::to_string(*c.pole_order) : "none");
    r.fields.emplace_back("radius_estimate", c.radius ? fixed(*c.radius) : "none");
    r.fields.emplace_back("verdict", verdict_name(c.verdict));
    r.fields.emplace_back("reason", reason_name(c.reason));
    r.fields.emplace_back("classification", describe(c));
    r.fields.emplace_back("evidence", c.evidence);
}

void run_subalgebra(RunReport& r, std::string_view id, const SubalgebraPresentation& s, const CaseParams& p)
{
    const std::size_t d = *p.degree_bound;
    const SearchLimits limits = SearchLimits::from_environment();
    const VariableNames vars = s.num_vars() == 2 ? VariableNames({"x", "y"}) : VariableNames({"x", "y", "z"});

    if (id == "ex-5.3") {
        const PurePowerCheck ck = example53_invariant_check(d, limits);
        r.fields.emplace_back("generators", generator_list(ck.truncation, vars));
        r.fields.emplace_back("no_pure_power_leading", yes_no(ck.no_pure_power_leading));
        r.fields.emplace_back("xy_powers_found", yes_no(ck.all_xy_powers_found));
        r.fields.emplace_back("stabilized", stabilization(ck.truncation));
        return;
    }

    const PoincareComparison pc = verify_poincare_equality(s, d, limits);
    r.fields.emplace_back("generators", generator_list(pc.truncation, vars));
    r.fields.emplace_back("generator_count", std::to_string(pc.truncation.new_generators.size()));
    r.fields.emplace_back("xy_family", xy_run(pc.truncation.new_generators));
    r.fields.emplace_back("stabilized", stabilization(pc.truncation));
    r.fields.emplace_back("head", head_of(pc.initial_series));
    r.fields.emplace_back("poincare_equal", yes_no(pc.equal));
    if (id != "ex-6.1")
        return;

    std::vector<ExponentVector> gens;
    for (const auto& g : pc.truncation.new_generators)
        gens.push_back(g.monomial);
    const std::size_t rank = monoid_rank(MonoidPresentation(s.num_vars(), std::move(gens)));
    const std::vector<std::uint32_t> denom{1, 1};
    std::optional<RationalSeries> fit;
    if (pc.initial_series.truncation() >= 2 * default_guard(denom))
        fit = fit_rational(pc.initial_series, denom);
    std::optional<std::size_t> pole;
    if (fit)
        pole = pole_order_at_one(*fit);
    r.fields.emplace_back("numerator", fit ? format_polynomial_in_t(fit->numerator) : "none");
    r.fields.emplace_back("denominator", fit ? format_denominator(fit->denominator_exponents) : "none");
    r.fields.emplace_back("pole_order", pole ? std::to_string(*pole) : "none");
    r.fields.emplace_back("rank", std::to_string(rank));
    r.fields.emplace_back("all_equal", yes_no(pole.value_or(rank + 1) == rank));
}

} // namespace

RunReport run_case(std::string_view id, const CaseParams& params)
{
    const GalleryCase& c = find_case(id);
    const CaseParams p = merged(c, params);
    RunReport r;
    r.id = c.id;
    r.title = c.title;
    r.anchor = c.anchor;
    r.notes = c.notes;

    try {
        const CaseInput input = build_case(id, params);
        if (const auto* m = std::get_if<MonoidPresentation>(&input))
            run_monoid(r, *m, p, id == "ex-3.2-5");
        else if (const auto* s = std::get_if<SubalgebraPresentation>(&input))
            run_subalgebra(r, id, *s, p);
        else
            run_series(r, std::get<SeriesInput>(input));
    } catch (const CapacityError& e) {
        throw Error(c.id + ": " + e.what());
    }

    const bool at_defaults = params.empty();
    for (const auto& e : c.expected) {
        if (e.default_only && !at_defaults)
            continue;
        FieldCheck fc;
        fc.key = e.key;
        fc.expected = substitute(e.value, p);
        fc.basis = e.basis;
        fc.actual = r.field(e.key).value_or("<missing>");
        fc.ok = matches(e.key, fc.expected, fc.actual);
        r.checks.push_back(std::move(fc));
    }
    return r;
}

std::string format_report(const RunReport& r)
{
    std::ostringstream os;
    os << (r.passed() ? "PASS " : "FAIL ") << r.id << "  " << r.title << '\n';
    os << "  anchor: " << r.anchor << '\n';
    std::size_t width = 0;
    for (const auto& [k, v] : r.fields)
        width = std::max(width, k.size());
    for (const auto& [k, v] : r.fields)
        os << "  " << k << std::string(width - k.size() + 2, ' ') << v << '\n';
    for (const auto& ch : r.checks) {
        os << "  [" << (ch.ok ? "ok" : "FAIL") << "] " << ch.key << " = " << ch.expected << " (" << ch.basis << ")";
        if (!ch.ok)
            os << ", got " << ch.actual;
        os << '\n';
    }
    for (const auto& n : r.notes)
        os << "  note: " << n << '\n';
    return os.str();
}

std::string format_report_machine(const RunReport& r)
{
    std::ostringstream os;
    os << "case=" << r.id << '\n';
    for (const auto& [k, v] : r.fields)
        os << k << '=' << v << '\n';
    for (const auto& ch : r.checks) {
        os << "check." << ch.key << ".expected=" << ch.expected << '\n';
        os << "check." << ch.key << ".basis=" << ch.basis << '\n';
        os << "check." << ch.key << ".result=" << (ch.ok ? "pass" : "fail") << '\n';
    }
    for (std::size_t i = 0; i < r.notes.size(); ++i)
        os << "note." << i + 1 << '=' << r.notes[i] << '\n';
    os << "result=" << (r.passed() ? "pass" : "fail") << '\n';
    return os.str();
}

} // namespace gradim
