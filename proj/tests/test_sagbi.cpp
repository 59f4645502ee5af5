#include <doctest.h>

#include <random>
#include <sstream>

#include "gradim/linalg.hpp"
#include "gradim/monoid.hpp"
#include "gradim/sagbi.hpp"
#include "oracles.hpp"

using namespace gradim;

namespace {

const VariableNames xy({"x", "y"});
const VariableNames xyz({"x", "y", "z"});

SubalgebraPresentation rs(const MonomialOrder& ord)
{
    return SubalgebraPresentation(
        {parse_polynomial("x + y", xy), parse_polynomial("x*y", xy), parse_polynomial("x*y^2", xy)},
        WeightVector::ones(2), ord);
}

std::vector<std::string> names(const InitialAlgebraTruncation& t, const VariableNames& v)
{
    std::vector<std::string> out;
    for (const auto& g : t.new_generators)
        out.push_back(format_monomial(g.monomial, v));
    return out;
}

// dim S_n as the rank of the coefficient matrix of all generator products,
// computed with the oracle's own elimination.
std::size_t component_rank_oracle(const SubalgebraPresentation& s, unsigned n)
{
    std::vector<Polynomial> prods;
    auto rec = [&](auto&& self, std::size_t i, unsigned left, Polynomial acc) -> void {
        if (i == s.generators().size()) {
            if (left == 0)
                prods.push_back(acc);
            return;
        }
        const unsigned d = static_cast<unsigned>(s.generator_degrees()[i]);
        for (unsigned e = 0; e * d <= left; ++e) {
            self(self, i + 1, left - e * d, acc);
            acc = acc * s.generators()[i];
        }
    };
    rec(rec, 0, n, Polynomial::constant(s.num_vars(), 1));
    std::map<ExponentVector, std::size_t> col;
    for (const auto& p : prods)
        for (const auto& [m, c] : p.terms())
            col.emplace(m, col.size());
    std::vector<std::vector<mpq_class>> rows;
    for (const auto& p : prods) {
        rows.emplace_back(col.size());
        for (const auto& [m, c] : p.terms())
            rows.back()[col.at(m)] = c;
    }
    return oracle::rank(rows);
}

} // namespace

TEST_CASE("presentation validation")
{
    CHECK_THROWS_AS(SubalgebraPresentation({parse_polynomial("x + y^2", xy)}, WeightVector::ones(2),
                                           MonomialOrder::lex(2)),
                    PreconditionError);
    CHECK_THROWS_AS(SubalgebraPresentation({parse_polynomial("3", xy)}, WeightVector::ones(2), MonomialOrder::lex(2)),
                    PreconditionError);
    CHECK_THROWS_AS(SubalgebraPresentation({parse_polynomial("x", xy)}, WeightVector::ones(3), MonomialOrder::lex(3)),
                    DimensionMismatch);
    const SubalgebraPresentation ok({parse_polynomial("x + y^2", xy)}, WeightVector({2, 1}), MonomialOrder::lex(2));
    CHECK(ok.generator_degrees() == std::vector<Degree>{2});
}

TEST_CASE("monoid membership search")
{
    const std::vector<ExponentVector> atoms{ExponentVector{1, 0}, ExponentVector{1, 1}, ExponentVector{1, 2}};
    const auto w = WeightVector::ones(2);
    const auto f = factor_monomial(ExponentVector{2, 2}, atoms, w);
    REQUIRE(f);
    // x*xy^2 and (xy)^2 both work; the lexicographically greatest tuple is (1, 0, 1).
    CHECK(*f == std::vector<unsigned>{1, 0, 1});
    CHECK_FALSE(factor_monomial(ExponentVector{0, 3}, atoms, w).has_value());
    CHECK_FALSE(factor_monomial(ExponentVector{1, 3}, atoms, w).has_value());
    CHECK(factor_monomial(ExponentVector{0, 0}, atoms, w) == std::vector<unsigned>{0, 0, 0});
    CHECK(factor_monomial(ExponentVector{0, 0}, {}, w) == std::vector<unsigned>{});

    SearchLimits tiny;
    tiny.max_nodes = 3;
    CHECK_THROWS_AS(factor_monomial(ExponentVector{9, 9}, atoms, w, tiny), CapacityError);
}

TEST_CASE("degree components")
{
    const auto s = rs(MonomialOrder::lex(2));
    const ComponentBasis c0 = degree_component_basis(s, 0);
    CHECK(c0.leading_monomials == std::vector<ExponentVector>{ExponentVector{0, 0}});
    const ComponentBasis c1 = degree_component_basis(s, 1);
    CHECK(c1.leading_monomials == std::vector<ExponentVector>{ExponentVector{1, 0}});
    const ComponentBasis c3 = degree_component_basis(s, 3);
    CHECK(c3.leading_monomials ==
          std::vector<ExponentVector>{ExponentVector{3, 0}, ExponentVector{2, 1}, ExponentVector{1, 2}});
    for (std::size_t i = 0; i < c3.basis.size(); ++i) {
        const Term lt = leading_term(c3.basis[i], s.order());
        CHECK(lt.monomial == c3.leading_monomials[i]);
        CHECK(lt.coefficient == 1);
    }
    SearchLimits tiny;
    tiny.max_combinations = 2;
    CHECK_THROWS_AS(degree_component_basis(s, 4, tiny), CapacityError);
}

TEST_CASE("subduction")
{
    const std::vector<Polynomial> f{parse_polynomial("x + y + z", xyz), parse_polynomial("x*y", xyz),
                                    parse_polynomial("x*y^2", xyz)};
    const MonomialOrder ord = MonomialOrder::from_rows({{1, 1, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});

    const SubductionResult self = subduct(f[1], f, ord, 10);
    CHECK(self.remainder.is_zero());
    CHECK(self.steps == 1);

    const Polynomial g = f[0] * f[1] - f[1] * parse_polynomial("x", xyz);
    CHECK(leading_term(g, ord).monomial == ExponentVector{1, 2, 0});
    const SubductionResult r = subduct(g, f, ord, 10);
    CHECK(r.steps >= 1);
    CHECK(r.remainder.is_zero() == false);
    CHECK(leading_term(r.remainder, ord).monomial == ExponentVector{1, 1, 1});

    const Polynomial y3 = parse_polynomial("y^3", xyz);
    const SubductionResult stuck = subduct(y3, f, ord, 10);
    CHECK(stuck.steps == 0);
    CHECK(stuck.remainder == y3);

    CHECK_THROWS_AS(subduct(f[0].pow(4) + f[1].pow(2), f, ord, 1), NonTermination);
}

TEST_CASE("initial algebra of k[x + y, xy, xy^2]")
{
    const InitialAlgebraTruncation t = initial_algebra_truncation(rs(MonomialOrder::lex(2)), 10);
    CHECK(names(t, xy) == std::vector<std::string>{"x", "x*y", "x*y^2", "x*y^3", "x*y^4", "x*y^5", "x*y^6",
                                                   "x*y^7", "x*y^8", "x*y^9"});
    CHECK_FALSE(t.stabilized_at.has_value());
    for (const auto& g : t.new_generators)
        CHECK(leading_term(g.witness, MonomialOrder::lex(2)).monomial == g.monomial);
}

TEST_CASE("non-stabilization across a family of orders with x > y")
{
    std::vector<MonomialOrder> orders{MonomialOrder::lex(2), MonomialOrder::grlex(2),
                                      MonomialOrder::weighted_lex(WeightVector({3, 1})),
                                      MonomialOrder::from_rows({{2, 1}, {1, 0}})};
    std::mt19937_64 rng(7);
    while (orders.size() < 10) {
        const long a = std::uniform_int_distribution<long>(1, 6)(rng);
        const long b = std::uniform_int_distribution<long>(0, a - 1)(rng);
        orders.push_back(MonomialOrder::from_rows({{a, b}, {0, 1}}));  // x > y since a > b
    }
    for (const auto& ord : orders) {
        const InitialAlgebraTruncation t = initial_algebra_truncation(rs(ord), 10);
        CHECK_FALSE(t.stabilized_at.has_value());
        CHECK(t.new_generators.size() == 10);
        for (unsigned j = 0; j < t.new_generators.size(); ++j)
            CHECK(t.new_generators[j].monomial == ExponentVector{1, j});
    }
}

TEST_CASE("non-stabilization with y > x")
{
    const std::vector<std::size_t> y_first{1, 0};
    const InitialAlgebraTruncation t = initial_algebra_truncation(rs(MonomialOrder::lex_permuted(y_first)), 10);
    CHECK_FALSE(t.stabilized_at.has_value());
}

TEST_CASE("finite SAGBI bases stabilize")
{
    const SubalgebraPresentation s({parse_polynomial("x^2 + y^2", xy), parse_polynomial("x*y", xy)},
                                   WeightVector::ones(2), MonomialOrder::grlex(2));
    const InitialAlgebraTruncation t = initial_algebra_truncation(s, 8);
    REQUIRE(t.stabilized_at.has_value());
    CHECK(*t.stabilized_at < 8);

    const VariableNames x1({"x"});
    const SubalgebraPresentation kx({parse_polynomial("x", x1)}, WeightVector::ones(1), MonomialOrder::lex(1));
    const InitialAlgebraTruncation tx = initial_algebra_truncation(kx, 5);
    CHECK(names(tx, x1) == std::vector<std::string>{"x"});
    CHECK(tx.stabilized_at == 1u);
    const PoincareComparison pc = verify_poincare_equality(kx, 5);
    CHECK(pc.equal);
    CHECK(pc.subalgebra_dims == std::vector<std::size_t>{1, 1, 1, 1, 1, 1});

    CHECK_THROWS_AS(initial_algebra_truncation(s, 1), PreconditionError);
}

TEST_CASE("Poincare equality for k[x + y, xy, xy^2] at D = 12")
{
    const PoincareComparison pc = verify_poincare_equality(rs(MonomialOrder::lex(2)), 12);
    CHECK(pc.equal);
    std::vector<std::size_t> want{1};
    for (std::size_t n = 1; n <= 12; ++n)
        want.push_back(n);
    CHECK(pc.subalgebra_dims == want);
}

TEST_CASE("component dimensions agree with an independent rank computation")
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<Polynomial> gens;
        const int m = std::uniform_int_distribution<int>(2, 4)(rng);
        while (static_cast<int>(gens.size()) < m) {
            const unsigned d = std::uniform_int_distribution<unsigned>(1, 3)(rng);
            Polynomial p(3);
            for (unsigned a = 0; a <= d; ++a)
                for (unsigned b = 0; a + b <= d; ++b) {
                    const long c = std::uniform_int_distribution<long>(-3, 3)(rng);
                    if (c != 0 && std::uniform_int_distribution<int>(0, 2)(rng) == 0)
                        p.add_term(ExponentVector{a, b, d - a - b}, c);
                }
            if (!p.is_zero())
                gens.push_back(p);
        }
        const SubalgebraPresentation s(gens, WeightVector::ones(3), MonomialOrder::grevlex(3));
        const PoincareComparison pc = verify_poincare_equality(s, 6);
        CHECK(pc.equal);
        for (unsigned n = 0; n <= 6; ++n)
            CHECK(pc.subalgebra_dims[n] == component_rank_oracle(s, n));
    }
}

TEST_CASE("echelon leading monomials are exactly the subduction-irreducible ones")
{
    const auto s = rs(MonomialOrder::lex(2));
    const InitialAlgebraTruncation t = initial_algebra_truncation(s, 6);
    std::vector<Polynomial> family;
    for (const auto& g : t.new_generators)
        family.push_back(g.witness);
    for (unsigned n = 1; n <= 6; ++n) {
        const ComponentBasis c = degree_component_basis(s, n);
        for (const auto& f : c.basis)
            CHECK(subduct(f, family, s.order(), 100).remainder.is_zero());
        for (unsigned j = 0; j <= n; ++j) {
            const ExponentVector m{n - j, j};
            const bool in_initial =
                std::find(c.leading_monomials.begin(), c.leading_monomials.end(), m) != c.leading_monomials.end();
            std::vector<ExponentVector> atoms;
            for (const auto& g : t.new_generators)
                atoms.push_back(g.monomial);
            CHECK(factor_monomial(m, atoms, s.weights()).has_value() == in_initial);
        }
    }
}

TEST_CASE("pure powers of y never lead")
{
    const PurePowerCheck c6 = example53_invariant_check(6);
    CHECK(c6.passed());
    CHECK(c6.offending.empty());
    const PurePowerCheck c3 = example53_invariant_check(3);
    CHECK(c3.passed());
    const auto has = [](const InitialAlgebraTruncation& t, const ExponentVector& m) {
        return std::any_of(t.new_generators.begin(), t.new_generators.end(),
                           [&m](const InitialGenerator& g) { return g.monomial == m; });
    };
    CHECK(has(c3.truncation, ExponentVector{1, 2, 0}));
    CHECK(c3.truncation.leading_monomials[1] == std::vector<ExponentVector>{ExponentVector{1, 0, 0}});
    CHECK_THROWS_AS(example53_invariant_check(2), PreconditionError);
}

TEST_CASE("subalgebra files")
{
    std::istringstream in("vars: x y z\norder: [1 1 0; 1 0 0; 0 1 0; 0 0 1]\ngenerators:\nx + y + z\nx*y\nx*y^2\n");
    const SubalgebraFile f = read_subalgebra(in);
    CHECK(f.subalgebra.generators().size() == 3);
    CHECK(f.subalgebra.order().rows().size() == 4);
    std::ostringstream out;
    write_subalgebra(out, f);
    std::istringstream again(out.str());
    const SubalgebraFile g = read_subalgebra(again);
    CHECK(g.subalgebra.generators() == f.subalgebra.generators());
    CHECK(g.subalgebra.order().rows() == f.subalgebra.order().rows());

    std::istringstream defaults("generators:\nx1^2 + x2^2\nx1*x2\n");
    const SubalgebraFile d = read_subalgebra(defaults);
    CHECK(d.subalgebra.num_vars() == 2);
    CHECK(d.subalgebra.order().rows() == MonomialOrder::grlex(2).rows());

    auto error_at = [](const std::string& text) -> std::pair<std::size_t, std::size_t> {
        std::istringstream is(text);
        try {
            read_subalgebra(is);
        } catch (const ParseError& e) {
            return {e.line(), e.column()};
        }
        return {0, 0};
    };
    CHECK(error_at("vars: x y\ngenerators:\nx + y^2\n").first == 3);
    CHECK(error_at("vars: x y\norder: banana\ngenerators:\nx\n") == std::pair<std::size_t, std::size_t>{2, 8});
    CHECK(error_at("vars: x y\ngenerators:\nx + q\n") == std::pair<std::size_t, std::size_t>{3, 5});
    CHECK(error_at("vars: x y\nx\n").first == 2);
    CHECK(error_at("vars: x y\norder: [1 -1]\ngenerators:\nx\n").first == 2);
}
