#include <doctest.h>

#include "gradim/text.hpp"

using namespace gradim;

TEST_CASE("variable names")
{
    const auto idx = VariableNames::indexed(3);
    CHECK(idx.is_indexed());
    CHECK(idx.name(2) == "x3");
    CHECK(idx.index_of("x2") == 1u);
    CHECK_FALSE(idx.index_of("x4").has_value());
    CHECK_THROWS_AS(VariableNames({"x", "x"}), PreconditionError);
    CHECK_THROWS_AS(VariableNames({"2x"}), PreconditionError);
    CHECK(max_indexed_variable("x1^2*x13 + x4") == 13);
    CHECK(max_indexed_variable("y^2") == 0);
}

TEST_CASE("monomials parse and print canonically")
{
    const auto idx = VariableNames::indexed(3);
    CHECK(parse_monomial("x1^2*x3", idx) == ExponentVector{2, 0, 1});
    CHECK(parse_monomial("x3*x1*x1", idx) == ExponentVector{2, 0, 1});
    CHECK(parse_monomial("1", idx) == ExponentVector(3));
    CHECK(format_monomial(ExponentVector{2, 0, 1}, idx) == "x1^2*x3");
    CHECK(format_monomial(ExponentVector(3), idx) == "1");

    const VariableNames xy({"x", "y"});
    CHECK(parse_monomial(" x * y^2 ", xy) == ExponentVector{1, 2});
    CHECK(format_monomial(ExponentVector{1, 2}, xy) == "x*y^2");
}

TEST_CASE("monomial round trip is exact")
{
    const VariableNames xyz({"x", "y", "z"});
    for (unsigned a = 0; a < 64; ++a) {
        const ExponentVector m{a % 4, a / 4 % 4, a / 16};
        const std::string s = format_monomial(m, xyz);
        CHECK(parse_monomial(s, xyz) == m);
        CHECK(format_monomial(parse_monomial(s, xyz), xyz) == s);
    }
}

TEST_CASE("polynomials")
{
    const VariableNames xy({"x", "y"});
    const Polynomial f = parse_polynomial("x^2 - 3/2*x*y + y - 1", xy);
    CHECK(f.num_terms() == 4);
    CHECK(f.coefficient(ExponentVector{1, 1}) == mpq_class(-3, 2));
    CHECK(format_polynomial(f, xy) == "x^2 - 3/2*x*y + y - 1");
    CHECK(parse_polynomial(format_polynomial(f, xy), xy) == f);
    CHECK(format_polynomial(Polynomial(2), xy) == "0");
    CHECK(parse_polynomial("x + y - x", xy) == parse_polynomial("y", xy));
    CHECK(format_polynomial(parse_polynomial("-x", xy), xy) == "-x");
    CHECK(parse_polynomial("2/4*x", xy).coefficient(ExponentVector{1, 0}) == mpq_class(1, 2));
    CHECK_THROWS_AS(parse_polynomial("2*x/4", xy), ParseError);
}

TEST_CASE("parse errors carry line and column")
{
    const VariableNames xy({"x", "y"});
    auto column_of = [&](const char* text) -> std::size_t {
        try {
            parse_polynomial(text, xy, 7, 10);
        } catch (const ParseError& e) {
            CHECK(e.line() == 7);
            return e.column();
        }
        FAIL("no ParseError for " << text);
        return 0;
    };
    CHECK(column_of("x + w") == 15);
    CHECK(column_of("x^") == 13);
    CHECK(column_of("x + ") == 15);
    CHECK(column_of("1/0*x") == 13);
    CHECK_THROWS_AS(parse_monomial("x*z", xy), ParseError);
    CHECK_THROWS_AS(parse_monomial("2*x", xy), ParseError);
}
