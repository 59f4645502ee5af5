#include "gradim/sagbi.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "gradim/linalg.hpp"
#include "gradim/monoid.hpp"

namespace gradim {

SubalgebraPresentation::SubalgebraPresentation(std::vector<Polynomial> generators, WeightVector weights,
                                               MonomialOrder order)
    : generators_(std::move(generators)), weights_(std::move(weights)), order_(std::move(order))
{
    if (order_.num_vars() != weights_.size())
        throw DimensionMismatch("order has " + std::to_string(order_.num_vars()) + " columns but there are " +
                                std::to_string(weights_.size()) + " weights");
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        const Polynomial& g = generators_[i];
        if (g.num_vars() != weights_.size())
            throw DimensionMismatch("generator " + std::to_string(i + 1) + " lives in " +
                                    std::to_string(g.num_vars()) + " variables, expected " +
                                    std::to_string(weights_.size()));
        if (g.is_zero())
            throw PreconditionError("generator " + std::to_string(i + 1) + " is zero");
        const auto d = g.homogeneous_degree(weights_);
        if (!d)
            throw PreconditionError("generator " + std::to_string(i + 1) + " is not homogeneous");
        if (*d == 0)
            throw PreconditionError("generator " + std::to_string(i + 1) + " has degree 0");
        degrees_.push_back(*d);
    }
}

SearchLimits SearchLimits::from_environment()
{
    SearchLimits limits;
    auto read = [](const char* name, std::size_t& target) {
        if (const char* v = std::getenv(name)) {
            char* end = nullptr;
            const unsigned long long parsed = std::strtoull(v, &end, 10);
            if (end != v && *end == '\0' && parsed > 0)
                target = static_cast<std::size_t>(parsed);
        }
    };
    read("GRADIM_MAX_NODES", limits.max_nodes);
    read("GRADIM_MAX_COMBINATIONS", limits.max_combinations);
    return limits;
}

namespace {

class FactorSearch {
public:
    FactorSearch(std::size_t n, std::span<const ExponentVector> atoms, const SearchLimits& limits)
        : atoms_(atoms), limits_(limits)
    {
        // covered_[i][c]: some atom with index >= i is positive in coordinate c.
        covered_.assign(atoms.size() + 1, std::vector<bool>(n, false));
        for (std::size_t i = atoms.size(); i-- > 0;) {
            covered_[i] = covered_[i + 1];
            for (std::size_t c = 0; c < n; ++c)
                if (atoms[i][c] > 0)
                    covered_[i][c] = true;
        }
        exps_.assign(atoms.size(), 0);
    }

    bool run(std::vector<Exponent> remaining) { return search(0, remaining); }
    const std::vector<unsigned>& exponents() const noexcept { return exps_; }

private:
    bool search(std::size_t i, std::vector<Exponent>& remaining)
    {
        if (++nodes_ > limits_.max_nodes)
            throw CapacityError("monoid membership search exceeded its node cap", nodes_, limits_.max_nodes);
        for (std::size_t c = 0; c < remaining.size(); ++c)
            if (remaining[c] > 0 && !covered_[i][c])
                return false;
        if (i == atoms_.size())
            return true;  // every remaining coordinate is zero here

        const ExponentVector& atom = atoms_[i];
        Exponent max_e = ~Exponent{0};
        for (std::size_t c = 0; c < remaining.size(); ++c)
            if (atom[c] > 0)
                max_e = std::min(max_e, remaining[c] / atom[c]);

        for (Exponent e = max_e + 1; e-- > 0;) {
            for (std::size_t c = 0; c < remaining.size(); ++c)
                remaining[c] -= e * atom[c];
            exps_[i] = e;
            const bool found = search(i + 1, remaining);
            for (std::size_t c = 0; c < remaining.size(); ++c)
                remaining[c] += e * atom[c];
            if (found)
                return true;
        }
        exps_[i] = 0;
        return false;
    }

    std::span<const ExponentVector> atoms_;
    const SearchLimits& limits_;
    std::vector<std::vector<bool>> covered_;
    std::vector<unsigned> exps_;
    std::size_t nodes_ = 0;
};

} // namespace

std::optional<std::vector<unsigned>> factor_monomial(const ExponentVector& target,
                                                     std::span<const ExponentVector> atoms, const WeightVector& weights,
                                                     const SearchLimits& limits)
{
    if (weights.size() != target.size())
        throw DimensionMismatch("weights and target monomial differ in dimension");
    for (const auto& a : atoms) {
        if (a.size() != target.size())
            throw DimensionMismatch("atom and target monomial differ in dimension");
        if (a.is_one())
            throw PreconditionError("the unit monomial cannot be a factor");
    }
    FactorSearch search(target.size(), atoms, limits);
    const auto exps = target.exponents();
    if (!search.run(std::vector<Exponent>(exps.begin(), exps.end())))
        return std::nullopt;
    return search.exponents();
}

namespace {

// Every multiset of generator indices with weighted degree sum n, as
// exponent tuples.
void enumerate_combinations(std::span<const Degree> degrees, std::size_t i, Degree remaining,
                            std::vector<unsigned>& current, std::vector<std::vector<unsigned>>& out,
                            std::size_t cap)
{
    if (i == degrees.size()) {
        if (remaining == 0) {
            if (out.size() >= cap)
                throw CapacityError("degree component needs too many generator products", out.size() + 1, cap);
            out.push_back(current);
        }
        return;
    }
    for (unsigned e = 0; Degree{e} * degrees[i] <= remaining; ++e) {
        current[i] = e;
        enumerate_combinations(degrees, i + 1, remaining - Degree{e} * degrees[i], current, out, cap);
    }
    current[i] = 0;
}

} // namespace

ComponentBasis degree_component_basis(const SubalgebraPresentation& s, std::size_t n, const SearchLimits& limits)
{
    ComponentBasis out;
    const std::size_t nv = s.num_vars();
    if (n == 0) {
        out.basis.push_back(Polynomial::constant(nv, 1));
        out.leading_monomials.emplace_back(nv);
        out.combinations = 1;
        return out;
    }

    std::vector<std::vector<unsigned>> combos;
    std::vector<unsigned> current(s.generators().size(), 0);
    enumerate_combinations(s.generator_degrees(), 0, n, current, combos, limits.max_combinations);
    out.combinations = combos.size();
    if (combos.empty())
        return out;

    std::vector<std::vector<Polynomial>> powers(s.generators().size());
    std::vector<Polynomial> products;
    products.reserve(combos.size());
    for (const auto& e : combos) {
        Polynomial p = Polynomial::constant(nv, 1);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            auto& cache = powers[i];
            if (cache.empty())
                cache.push_back(Polynomial::constant(nv, 1));
            while (cache.size() <= e[i])
                cache.push_back(cache.back() * s.generators()[i]);
            p = p * cache[e[i]];
        }
        products.push_back(std::move(p));
    }

    std::vector<ExponentVector> columns;
    {
        std::set<ExponentVector> seen;
        for (const auto& p : products)
            for (const auto& [m, c] : p.terms())
                seen.insert(m);
        columns.assign(seen.begin(), seen.end());
    }
    const MonomialOrder& ord = s.order();
    std::sort(columns.begin(), columns.end(),
              [&ord](const ExponentVector& a, const ExponentVector& b) { return ord.compare(a, b) > 0; });
    std::map<ExponentVector, std::size_t> column_of;
    for (std::size_t c = 0; c < columns.size(); ++c)
        column_of.emplace(columns[c], c);

    RationalMatrix m(products.size(), columns.size());
    for (std::size_t r = 0; r < products.size(); ++r)
        for (const auto& [mono, c] : products[r].terms())
            m(r, column_of.at(mono)) = c;

    const EchelonForm ech = row_echelon(std::move(m));
    for (std::size_t r = 0; r < ech.rank(); ++r) {
        Polynomial p(nv);
        for (std::size_t c = 0; c < columns.size(); ++c)
            if (sgn(ech.matrix(r, c)) != 0)
                p.add_term(columns[c], ech.matrix(r, c));
        out.basis.push_back(std::move(p));
        out.leading_monomials.push_back(columns[ech.pivot_columns[r]]);
    }
    return out;
}

NonTermination::NonTermination(std::size_t steps, Polynomial remainder)
    : Error("subduction did not terminate within " + std::to_string(steps) + " steps"),
      steps_(steps),
      remainder_(std::move(remainder))
{
}

SubductionResult subduct(const Polynomial& f, std::span<const Polynomial> family, const MonomialOrder& ord,
                         std::size_t max_steps, const WeightVector& weights, const SearchLimits& limits)
{
    std::vector<ExponentVector> atoms;
    std::vector<mpq_class> lead_coeffs;
    for (const auto& g : family) {
        if (g.is_zero())
            throw PreconditionError("subduction family contains the zero polynomial");
        const Term lt = leading_term(g, ord);
        if (lt.monomial.is_one())
            throw PreconditionError("subduction family contains a constant");
        atoms.push_back(lt.monomial);
        lead_coeffs.push_back(lt.coefficient);
    }

    SubductionResult out{f, 0};
    std::vector<std::vector<Polynomial>> powers(family.size());
    while (!out.remainder.is_zero()) {
        const Term lt = leading_term(out.remainder, ord);
        const auto e = factor_monomial(lt.monomial, atoms, weights, limits);
        if (!e)
            break;
        if (out.steps == max_steps)
            throw NonTermination(out.steps, out.remainder);

        Polynomial product = Polynomial::constant(f.num_vars(), 1);
        mpq_class lead = 1;
        for (std::size_t i = 0; i < e->size(); ++i) {
            if ((*e)[i] == 0)
                continue;
            auto& cache = powers[i];
            if (cache.empty())
                cache.push_back(Polynomial::constant(f.num_vars(), 1));
            while (cache.size() <= (*e)[i])
                cache.push_back(cache.back() * family[i]);
            product = product * cache[(*e)[i]];
            mpq_class c;
            mpz_pow_ui(c.get_num_mpz_t(), lead_coeffs[i].get_num_mpz_t(), (*e)[i]);
            mpz_pow_ui(c.get_den_mpz_t(), lead_coeffs[i].get_den_mpz_t(), (*e)[i]);
            c.canonicalize();
            lead *= c;
        }
        out.remainder -= product * mpq_class(lt.coefficient / lead);
        ++out.steps;
    }
    return out;
}

SubductionResult subduct(const Polynomial& f, std::span<const Polynomial> family, const MonomialOrder& ord,
                         std::size_t max_steps)
{
    return subduct(f, family, ord, max_steps, WeightVector::ones(f.num_vars()));
}

std::vector<std::size_t> InitialAlgebraTruncation::component_dimensions() const
{
    std::vector<std::size_t> dims;
    dims.reserve(leading_monomials.size());
    for (const auto& lm : leading_monomials)
        dims.push_back(lm.size());
    return dims;
}

InitialAlgebraTruncation initial_algebra_truncation(const SubalgebraPresentation& s, std::size_t d,
                                                    const SearchLimits& limits)
{
    for (Degree g : s.generator_degrees())
        if (g > d)
            throw PreconditionError("degree bound " + std::to_string(d) + " is below a generator degree " +
                                    std::to_string(g));

    InitialAlgebraTruncation out;
    out.degree_bound = d;
    out.leading_monomials.push_back({ExponentVector(s.num_vars())});

    std::vector<ExponentVector> atoms;  // generators found in degrees below the current one
    for (std::size_t n = 1; n <= d; ++n) {
        ComponentBasis comp = degree_component_basis(s, n, limits);
        const std::size_t atoms_below = atoms.size();
        for (std::size_t i = 0; i < comp.leading_monomials.size(); ++i) {
            const ExponentVector& lm = comp.leading_monomials[i];
            const std::span<const ExponentVector> lower(atoms.data(), atoms_below);
            if (factor_monomial(lm, lower, s.weights(), limits))
                continue;
            out.new_generators.push_back({lm, n, comp.basis[i]});
        }
        for (std::size_t k = atoms_below; k < out.new_generators.size(); ++k)
            atoms.push_back(out.new_generators[k].monomial);
        out.leading_monomials.push_back(std::move(comp.leading_monomials));
    }

    const std::size_t last = out.new_generators.empty() ? 0 : out.new_generators.back().degree;
    if (last < d || d == 0)
        out.stabilized_at = last;
    return out;
}

PoincareComparison verify_poincare_equality(const SubalgebraPresentation& s, std::size_t d,
                                            const SearchLimits& limits)
{
    if (d == 0)
        throw PreconditionError("verify_poincare_equality needs D >= 1");
    PoincareComparison out;
    out.truncation = initial_algebra_truncation(s, d, limits);
    out.subalgebra_dims = out.truncation.component_dimensions();

    std::vector<ExponentVector> gens;
    for (const auto& g : out.truncation.new_generators)
        gens.push_back(g.monomial);
    const MonoidPresentation monoid(s.num_vars(), std::move(gens), s.weights());
    out.initial_series = hilbert_function(monoid, d);

    out.equal = true;
    for (std::size_t n = 0; n <= d; ++n) {
        if (out.initial_series[n] != static_cast<unsigned long>(out.subalgebra_dims[n])) {
            out.equal = false;
            out.first_discrepancy = n;
            break;
        }
    }
    return out;
}

SubalgebraPresentation pure_power_free_example()
{
    const VariableNames vars({"x", "y", "z"});
    std::vector<Polynomial> gens{parse_polynomial("x + y + z", vars), parse_polynomial("x*y", vars),
                                 parse_polynomial("x*y^2", vars)};
    MonomialOrder ord = MonomialOrder::from_rows({{1, 1, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, "xy-degree-then-lex");
    return SubalgebraPresentation(std::move(gens), WeightVector::ones(3), std::move(ord));
}

PurePowerCheck example53_invariant_check(std::size_t d, const SearchLimits& limits)
{
    if (d < 3)
        throw PreconditionError("the pure-power check needs D >= 3");
    PurePowerCheck out;
    out.truncation = initial_algebra_truncation(pure_power_free_example(), d, limits);

    for (const auto& degree : out.truncation.leading_monomials)
        for (const auto& m : degree)
            if (m[0] == 0 && m[2] == 0 && m[1] > 0)
                out.offending.push_back(m);
    out.no_pure_power_leading = out.offending.empty();

    for (unsigned m = 2; m + 1 <= d; ++m) {
        const ExponentVector want{1, m, 0};
        const bool found = std::any_of(out.truncation.new_generators.begin(), out.truncation.new_generators.end(),
                                       [&want](const InitialGenerator& g) { return g.monomial == want; });
        if (!found)
            out.missing.push_back(m);
    }
    out.all_xy_powers_found = out.missing.empty();
    return out;
}

namespace {

std::string strip_comment(const std::string& line)
{
    const auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

std::size_t first_non_space(const std::string& s)
{
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
        ++i;
    return i;
}

std::vector<std::string> split_words(const std::string& s)
{
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string w; is >> w;)
        out.push_back(w);
    return out;
}

std::vector<MonomialOrder::Row> parse_order_matrix(const std::string& text, std::size_t line, std::size_t column)
{
    std::vector<MonomialOrder::Row> rows(1);
    std::size_t i = 1;  // past '['
    bool closed = false;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == ';') {
            rows.emplace_back();
            ++i;
        } else if (c == ']') {
            closed = true;
            ++i;
            break;
        } else if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t end = i + 1;
            while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end])))
                ++end;
            const std::string tok = text.substr(i, end - i);
            if (tok == "-" || tok.size() > 12)
                throw ParseError(line, column + i + 1, "bad order matrix entry '" + tok + "'");
            rows.back().push_back(std::stoll(tok));
            i = end;
        } else {
            throw ParseError(line, column + i + 1, std::string("unexpected character '") + c + "' in order matrix");
        }
    }
    if (!closed)
        throw ParseError(line, column + text.size() + 1, "order matrix is missing ']'");
    for (; i < text.size(); ++i)
        if (!std::isspace(static_cast<unsigned char>(text[i])))
            throw ParseError(line, column + i + 1, "unexpected text after order matrix");
    return rows;
}

} // namespace

SubalgebraFile read_subalgebra(std::istream& is)
{
    struct Line {
        std::size_t number;
        std::size_t column;
        std::string text;
    };
    std::optional<std::vector<std::string>> names;
    std::optional<std::vector<std::uint32_t>> weights;
    std::optional<Line> order_line;
    std::size_t weights_line = 0;
    bool in_generators = false;
    std::vector<Line> gens;

    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        const std::string line = strip_comment(raw);
        const std::size_t start = first_non_space(line);
        if (start == line.size())
            continue;
        const std::string body = line.substr(start);
        if (in_generators) {
            gens.push_back({lineno, start, body});
            continue;
        }
        if (body.rfind("vars:", 0) == 0) {
            names = split_words(body.substr(5));
            try {
                VariableNames check(*names);
            } catch (const PreconditionError& e) {
                throw ParseError(lineno, start + 6, e.what());
            }
        } else if (body.rfind("weights:", 0) == 0) {
            weights.emplace();
            weights_line = lineno;
            for (const auto& w : split_words(body.substr(8))) {
                if (!std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
                    w.size() > 9 || std::stoul(w) == 0)
                    throw ParseError(lineno, start + 1 + body.find(w), "weights must be positive integers");
                weights->push_back(static_cast<std::uint32_t>(std::stoul(w)));
            }
        } else if (body.rfind("order:", 0) == 0) {
            const std::size_t off = first_non_space(body.substr(6));
            order_line = Line{lineno, start + 6 + off, body.substr(6 + off)};
        } else if (body.rfind("generators:", 0) == 0) {
            in_generators = true;
            if (first_non_space(body.substr(11)) != body.size() - 11)
                throw ParseError(lineno, start + 12, "generators start on the following lines");
        } else {
            throw ParseError(lineno, start + 1, "expected 'vars:', 'weights:', 'order:' or 'generators:'");
        }
    }
    if (!in_generators)
        throw ParseError(lineno + 1, 1, "missing 'generators:' section");

    std::optional<std::vector<MonomialOrder::Row>> matrix;
    std::string order_name = "grlex";
    if (order_line) {
        std::string text = order_line->text;
        while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
            text.pop_back();
        if (!text.empty() && text.front() == '[')
            matrix = parse_order_matrix(text, order_line->number, order_line->column);
        else if (text == "lex" || text == "grlex" || text == "grevlex")
            order_name = text;
        else
            throw ParseError(order_line->number, order_line->column + 1,
                             "order must be lex, grlex, grevlex or a matrix [..; ..]");
    }

    VariableNames vars = VariableNames::indexed(0);
    if (names) {
        vars = VariableNames(*names);
    } else {
        std::size_t n = 0;
        for (const auto& g : gens)
            n = std::max(n, max_indexed_variable(g.text));
        if (weights)
            n = std::max(n, weights->size());
        if (matrix && !matrix->empty())
            n = std::max(n, matrix->front().size());
        vars = VariableNames::indexed(n);
    }
    if (weights && weights->size() != vars.size())
        throw ParseError(weights_line, 1,
                         "expected " + std::to_string(vars.size()) + " weights, found " + std::to_string(weights->size()));

    std::optional<MonomialOrder> ord;
    try {
        if (matrix)
            ord = MonomialOrder::from_rows(*matrix);
        else if (order_name == "lex")
            ord = MonomialOrder::lex(vars.size());
        else if (order_name == "grevlex")
            ord = MonomialOrder::grevlex(vars.size());
        else
            ord = MonomialOrder::grlex(vars.size());
    } catch (const PreconditionError& e) {
        throw ParseError(order_line ? order_line->number : 1, order_line ? order_line->column + 1 : 1, e.what());
    }
    if (ord->num_vars() != vars.size())
        throw ParseError(order_line->number, order_line->column + 1,
                         "order matrix has " + std::to_string(ord->num_vars()) + " columns, expected " +
                             std::to_string(vars.size()));

    std::vector<Polynomial> polys;
    WeightVector w = weights ? WeightVector(*weights) : WeightVector::ones(vars.size());
    for (const auto& g : gens) {
        Polynomial p = parse_polynomial(g.text, vars, g.number, g.column);
        if (p.is_zero())
            throw ParseError(g.number, g.column + 1, "generator is zero");
        const auto d = p.homogeneous_degree(w);
        if (!d)
            throw ParseError(g.number, g.column + 1, "generator is not homogeneous for the given weights");
        if (*d == 0)
            throw ParseError(g.number, g.column + 1, "generator is a constant");
        polys.push_back(std::move(p));
    }
    return SubalgebraFile{vars, SubalgebraPresentation(std::move(polys), std::move(w), std::move(*ord))};
}

void write_subalgebra(std::ostream& os, const SubalgebraFile& file)
{
    const auto& s = file.subalgebra;
    if (!file.vars.is_indexed()) {
        os << "vars:";
        for (const auto& n : file.vars.names())
            os << ' ' << n;
        os << '\n';
    }
    if (!s.weights().all_ones()) {
        os << "weights:";
        for (auto w : s.weights().weights())
            os << ' ' << w;
        os << '\n';
    }
    const std::size_t n = s.num_vars();
    const auto& rows = s.order().rows();
    if (rows == MonomialOrder::lex(n).rows()) {
        os << "order: lex\n";
    } else if (rows == MonomialOrder::grlex(n).rows()) {
        os << "order: grlex\n";
    } else if (rows == MonomialOrder::grevlex(n).rows()) {
        os << "order: grevlex\n";
    } else {
        os << "order: [";
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r)
                os << "; ";
            for (std::size_t c = 0; c < rows[r].size(); ++c)
                os << (c ? " " : "") << rows[r][c];
        }
        os << "]\n";
    }
    os << "generators:\n";
    for (const auto& g : s.generators())
        os << format_polynomial(g, file.vars) << '\n';
}

} // namespace gradim
