#ifndef GRADIM_SERIES_HPP
#define GRADIM_SERIES_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gradim/error.hpp"

namespace gradim {

/// Truncated Poincare series h_0 + h_1 t + ... + h_N t^N with exact
/// non-negative integer coefficients.
class GradedSeries {
public:
    GradedSeries() = default;
    // Throws PreconditionError on a negative coefficient.
    explicit GradedSeries(std::vector<mpz_class> coefficients);
    static GradedSeries from_integers(std::span<const long> coefficients);

    std::size_t truncation() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    bool empty() const noexcept { return coeffs_.empty(); }
    const mpz_class& operator[](std::size_t n) const { return coeffs_[n]; }
    const std::vector<mpz_class>& coefficients() const noexcept { return coeffs_; }

    GradedSeries truncated(std::size_t n) const;

    friend bool operator==(const GradedSeries&, const GradedSeries&) = default;

private:
    std::vector<mpz_class> coeffs_;
};

/// Dense univariate polynomial in t with integer coefficients, lowest degree
/// first, no trailing zeros.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<mpz_class> coefficients);
    static IntPolynomial from_integers(std::initializer_list<long> coefficients);

    bool is_zero() const noexcept { return coeffs_.empty(); }
    // Degree of the zero polynomial is reported as 0.
    std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
    mpz_class operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : mpz_class(0); }
    const std::vector<mpz_class>& coefficients() const noexcept { return coeffs_; }
    mpz_class value_at_one() const;

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

private:
    std::vector<mpz_class> coeffs_;
};

// Human form such as "t^2 - t + 1", highest degree first.
std::string format_polynomial_in_t(const IntPolynomial& p);

/// numerator(t) / prod_i (1 - t^{a_i}).
struct RationalSeries {
    IntPolynomial numerator;
    std::vector<std::uint32_t> denominator_exponents;  // sorted, each >= 1
};

std::string format_denominator(std::span<const std::uint32_t> exponents);
std::string format_rational_series(const RationalSeries& rs);

// Power-series expansion of rs up to t^n; coefficients may be negative.
std::vector<mpz_class> expand(const RationalSeries& rs, std::size_t n);

// Coefficients of h(t) * prod (1 - t^{a_i}) up to t^{N}. Signed.
std::vector<mpz_class> multiply_by_denominator(std::span<const mpz_class> h, std::span<const std::uint32_t> exponents);

// max(denominator) + 5.
std::size_t default_guard(std::span<const std::uint32_t> denominator);

/// Exact rational reconstruction against a fixed denominator. The fit is
/// accepted only when the truncated numerator h * prod(1 - t^{a_i})
/// vanishes in the guard window (N - guard, N]. Throws PreconditionError
/// unless guard >= max(denominator), N >= 2 * guard and every a_i >= 1.
std::optional<RationalSeries> fit_rational(const GradedSeries& h, std::span<const std::uint32_t> denominator,
                                           std::size_t guard);
inline std::optional<RationalSeries> fit_rational(const GradedSeries& h, std::span<const std::uint32_t> denominator)
{
    return fit_rational(h, denominator, default_guard(denominator));
}

// Multiplicity of t = 1 as a root of p. Throws PreconditionError for p = 0.
std::size_t root_multiplicity_at_one(const IntPolynomial& p);

/// Order of the pole at t = 1: number of denominator factors minus the
/// multiplicity of 1 as a root of the numerator, clamped at 0.
std::size_t pole_order_at_one(const RationalSeries& rs);

/// Raised when multiplying by (1 - t^h) produces a negative coefficient:
/// the element of degree h cannot be a non-zero-divisor at this truncation.
class RegularityViolation : public Error {
public:
    RegularityViolation(std::size_t degree, mpz_class value);
    std::size_t degree() const noexcept { return degree_; }
    const mpz_class& value() const noexcept { return value_; }

private:
    std::size_t degree_;
    mpz_class value_;
};

// (1 - t^h) P(t), truncated. h = 0 is a PreconditionError.
GradedSeries regular_element_factor(const GradedSeries& p, std::size_t h);
// P(t) / (1 - t^h), truncated. h = 0 is a PreconditionError.
GradedSeries divide_by_regular_factor(const GradedSeries& p, std::size_t h);

/// Radius of convergence estimate. Requires N >= 10.
///
/// Root-test values h_n^{1/n} converge too slowly to separate sub-exponential
/// growth from radius < 1 at N in the hundreds, so the estimate extrapolates
/// instead: log h_n is fitted by least squares to c0 + c1 n + c2 sqrt(n) +
/// c3 log(n) over the positive coefficients of the tail (second half), and
/// exp(-c1) is returned. A tail with no positive coefficient gives +infinity.
double radius_estimate(const GradedSeries& h);
// Plain root test: 1 / max h_n^{1/n} over the tail. +infinity for a zero tail.
double root_test_radius(const GradedSeries& h);

enum class Verdict { HilbertSerre, NotHilbertSerre, UnknownAtTruncation };
enum class NonHSReason { None, RadiusBelowOne, PoleUnbounded };

struct HSClassification {
    Verdict verdict = Verdict::UnknownAtTruncation;
    NonHSReason reason = NonHSReason::None;
    std::optional<std::size_t> pole_order;
    std::optional<RationalSeries> fit;
    std::optional<double> radius;
    std::size_t pole_bound_checked = 0;  // d_max used by the pole-growth test
    std::string evidence;
};

std::string verdict_name(Verdict v);
// "HilbertSerre(2)", "NotHilbertSerre(radius 0.5000)", "NotHilbertSerre(pole-unbounded up to 10)", ...
std::string describe(const HSClassification& c);

struct ClassifyOptions {
    double radius_margin = 0.05;
};

using DenominatorCandidates = std::vector<std::vector<std::uint32_t>>;

/// Candidate denominators tried in order: the product over the given
/// generator degrees (skipped when empty), then (1 - t)^k for k = 0..12,
/// then (1 - t^L)^k for L = 2..4, k = 1..12.
DenominatorCandidates default_denominator_candidates(std::span<const std::uint32_t> generator_degrees = {});

// First candidate that fits h; candidates whose guard is too large for the
// truncation are skipped.
std::optional<RationalSeries> fit_first(const GradedSeries& h, const DenominatorCandidates& candidates);

/// True when A(n) / n^d is strictly increasing over the last quarter of the
/// truncation for every d <= d_max, A being the cumulative sums of h. This is
/// the finite surrogate for "(1 - t)^d P(t) is unbounded as t -> 1 for all
/// d <= d_max".
bool pole_growth_exceeds(const GradedSeries& h, std::size_t d_max);

/// Hilbert-Serre classification of a truncated series:
///   1. first candidate denominator that fits       -> HilbertSerre(pole order)
///   2. radius_estimate < 1 - margin                  -> NotHilbertSerre(radius)
///   3. pole_growth_exceeds(h, d_max)                 -> NotHilbertSerre(pole-unbounded)
///   4. otherwise                                     -> UnknownAtTruncation
/// Candidates violating the fit precondition at this truncation are skipped.
HSClassification classify_hilbert_serre(const GradedSeries& h, const DenominatorCandidates& candidates,
                                        std::size_t d_max, const ClassifyOptions& options = {});

// p(0..N) by Euler's pentagonal-number recurrence.
GradedSeries partition_series(std::size_t n);
// h_n = n^d + 1. Requires d >= 1.
GradedSeries power_sum_series(unsigned d, std::size_t n);

// Series file: one non-negative integer per line, '#' comments.
GradedSeries read_series(std::istream& is);
void write_series(std::ostream& os, const GradedSeries& h);

} // namespace gradim

#endif
