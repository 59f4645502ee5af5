#ifndef GRADIM_MONOMIAL_HPP
#define GRADIM_MONOMIAL_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gradim/error.hpp"

namespace gradim {

using Exponent = std::uint32_t;
using Degree = std::uint64_t;

/// A point of N^n: the exponents of a monomial x_1^{a_1} ... x_n^{a_n}.
///
/// The ambient dimension is fixed at construction. The built-in ordering is
/// plain lexicographic comparison of the exponent sequences; it is used for
/// container keys only. Term orders live in MonomialOrder.
class ExponentVector {
public:
    ExponentVector() = default;
    explicit ExponentVector(std::size_t num_vars) : exps_(num_vars, 0) {}
    explicit ExponentVector(std::vector<Exponent> exps) : exps_(std::move(exps)) {}
    ExponentVector(std::initializer_list<Exponent> exps) : exps_(exps) {}

    static ExponentVector unit(std::size_t num_vars, std::size_t var, Exponent power = 1);

    std::size_t size() const noexcept { return exps_.size(); }
    Exponent operator[](std::size_t i) const { return exps_[i]; }
    std::span<const Exponent> exponents() const noexcept { return exps_; }

    bool is_one() const noexcept;
    Degree total_degree() const noexcept;

    // Componentwise a <= b, i.e. this monomial divides `other`.
    bool divides(const ExponentVector& other) const;

    ExponentVector& operator+=(const ExponentVector& other);
    friend ExponentVector operator+(ExponentVector a, const ExponentVector& b) { return a += b; }
    // Requires divides(); throws PreconditionError otherwise.
    friend ExponentVector operator-(const ExponentVector& a, const ExponentVector& b);
    ExponentVector scaled(Exponent factor) const;

    friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;
    friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

private:
    std::vector<Exponent> exps_;
};

struct ExponentVectorHash {
    std::size_t operator()(const ExponentVector& v) const noexcept;
};

/// Positive integer degree of each variable. Every weight is at least 1, so
/// each degree holds finitely many monomials.
class WeightVector {
public:
    WeightVector() = default;
    explicit WeightVector(std::vector<std::uint32_t> weights);
    static WeightVector ones(std::size_t num_vars);

    std::size_t size() const noexcept { return weights_.size(); }
    std::uint32_t operator[](std::size_t i) const { return weights_[i]; }
    std::span<const std::uint32_t> weights() const noexcept { return weights_; }
    bool all_ones() const noexcept;

    friend bool operator==(const WeightVector&, const WeightVector&) = default;

private:
    std::vector<std::uint32_t> weights_;
};

Degree weighted_degree(const ExponentVector& a, const WeightVector& w);

/// Matrix term order: a < b iff the first row r with r.a != r.b has r.a < r.b.
///
/// Construction checks that the matrix has full column rank (so compare is
/// total) and that for every column the first nonzero entry is positive (so
/// 1 < x_i). Together these give a multiplicative well-order on N^n.
class MonomialOrder {
public:
    using Row = std::vector<std::int64_t>;

    static MonomialOrder from_rows(std::vector<Row> rows, std::string name = "matrix");
    static MonomialOrder lex(std::size_t num_vars);
    static MonomialOrder grlex(std::size_t num_vars);
    static MonomialOrder grevlex(std::size_t num_vars);
    // Weight row first, ties broken by lex.
    static MonomialOrder weighted_lex(const WeightVector& weights);
    // Lex with variables ranked by `priority` (priority[0] is the largest variable).
    static MonomialOrder lex_permuted(std::span<const std::size_t> priority);

    std::size_t num_vars() const noexcept { return num_vars_; }
    const std::vector<Row>& rows() const noexcept { return rows_; }
    const std::string& name() const noexcept { return name_; }

    std::strong_ordering compare(const ExponentVector& a, const ExponentVector& b) const;
    bool less(const ExponentVector& a, const ExponentVector& b) const { return compare(a, b) < 0; }

private:
    MonomialOrder(std::size_t num_vars, std::vector<Row> rows, std::string name);

    std::size_t num_vars_ = 0;
    std::vector<Row> rows_;
    std::string name_;
};

std::strong_ordering compare(const ExponentVector& a, const ExponentVector& b, const MonomialOrder& ord);

struct Term {
    ExponentVector monomial;
    mpq_class coefficient;
};

/// Polynomial in n variables with exact rational coefficients. Zero
/// coefficients are never stored.
class Polynomial {
public:
    using TermMap = std::map<ExponentVector, mpq_class>;

    Polynomial() = default;
    explicit Polynomial(std::size_t num_vars) : num_vars_(num_vars) {}

    static Polynomial monomial(const ExponentVector& m, const mpq_class& coefficient = 1);
    static Polynomial constant(std::size_t num_vars, const mpq_class& c);

    std::size_t num_vars() const noexcept { return num_vars_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t num_terms() const noexcept { return terms_.size(); }
    const TermMap& terms() const noexcept { return terms_; }
    mpq_class coefficient(const ExponentVector& m) const;

    void add_term(const ExponentVector& m, const mpq_class& c);

    // Weighted degree when every term has the same one; nullopt for zero or
    // non-homogeneous polynomials.
    std::optional<Degree> homogeneous_degree(const WeightVector& w) const;
    bool is_homogeneous(const WeightVector& w) const { return homogeneous_degree(w).has_value(); }

    Polynomial pow(unsigned e) const;

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const mpq_class& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const mpq_class& c) { return a *= c; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

    friend bool operator==(const Polynomial& a, const Polynomial& b)
    {
        return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
    }

private:
    std::size_t num_vars_ = 0;
    TermMap terms_;
};

// Throws PreconditionError for the zero polynomial.
Term leading_term(const Polynomial& f, const MonomialOrder& ord);

inline Polynomial poly_mul(const Polynomial& f, const Polynomial& g) { return f * g; }

} // namespace gradim

#endif
