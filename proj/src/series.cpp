#include "gradim/series.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <Eigen/Dense>

namespace gradim {

namespace {

double log_of(const mpz_class& z)
{
    long exp2 = 0;
    const double mantissa = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(mantissa) + static_cast<double>(exp2) * std::log(2.0);
}

std::vector<mpz_class> trimmed(std::vector<mpz_class> c)
{
    while (!c.empty() && sgn(c.back()) == 0)
        c.pop_back();
    return c;
}

std::string term_in_t(const mpz_class& magnitude, std::size_t power)
{
    std::string mono;
    if (power == 1)
        mono = "t";
    else if (power > 1)
        mono = "t^" + std::to_string(power);
    if (mono.empty())
        return magnitude.get_str();
    if (magnitude == 1)
        return mono;
    return magnitude.get_str() + "*" + mono;
}

} // namespace

GradedSeries::GradedSeries(std::vector<mpz_class> coefficients) : coeffs_(std::move(coefficients))
{
    for (std::size_t n = 0; n < coeffs_.size(); ++n)
        if (sgn(coeffs_[n]) < 0)
            throw PreconditionError("series coefficient h_" + std::to_string(n) + " is negative");
}

GradedSeries GradedSeries::from_integers(std::span<const long> coefficients)
{
    std::vector<mpz_class> c;
    c.reserve(coefficients.size());
    for (long v : coefficients)
        c.emplace_back(v);
    return GradedSeries(std::move(c));
}

GradedSeries GradedSeries::truncated(std::size_t n) const
{
    if (n + 1 >= coeffs_.size())
        return *this;
    return GradedSeries(std::vector<mpz_class>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(n + 1)));
}

IntPolynomial::IntPolynomial(std::vector<mpz_class> coefficients) : coeffs_(trimmed(std::move(coefficients))) {}

IntPolynomial IntPolynomial::from_integers(std::initializer_list<long> coefficients)
{
    std::vector<mpz_class> c;
    for (long v : coefficients)
        c.emplace_back(v);
    return IntPolynomial(std::move(c));
}

mpz_class IntPolynomial::value_at_one() const
{
    mpz_class s = 0;
    for (const auto& c : coeffs_)
        s += c;
    return s;
}

std::string format_polynomial_in_t(const IntPolynomial& p)
{
    if (p.is_zero())
        return "0";
    std::string out;
    const auto& c = p.coefficients();
    for (std::size_t i = c.size(); i-- > 0;) {
        if (sgn(c[i]) == 0)
            continue;
        const bool negative = sgn(c[i]) < 0;
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        out += term_in_t(abs(c[i]), i);
    }
    return out;
}

std::string format_denominator(std::span<const std::uint32_t> exponents)
{
    if (exponents.empty())
        return "1";
    std::vector<std::uint32_t> sorted(exponents.begin(), exponents.end());
    std::sort(sorted.begin(), sorted.end());
    std::string out;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i])
            ++j;
        out += sorted[i] == 1 ? "(1 - t)" : "(1 - t^" + std::to_string(sorted[i]) + ")";
        if (j - i > 1)
            out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

std::string format_rational_series(const RationalSeries& rs)
{
    return "(" + format_polynomial_in_t(rs.numerator) + ")/" + format_denominator(rs.denominator_exponents);
}

std::vector<mpz_class> expand(const RationalSeries& rs, std::size_t n)
{
    std::vector<mpz_class> q(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        q[i] = rs.numerator[i];
    for (std::uint32_t a : rs.denominator_exponents)
        for (std::size_t i = a; i <= n; ++i)
            q[i] += q[i - a];
    return q;
}

std::vector<mpz_class> multiply_by_denominator(std::span<const mpz_class> h, std::span<const std::uint32_t> exponents)
{
    std::vector<mpz_class> c(h.begin(), h.end());
    for (std::uint32_t a : exponents)
        for (std::size_t i = c.size(); i-- > a;)
            c[i] -= c[i - a];
    return c;
}

std::size_t default_guard(std::span<const std::uint32_t> denominator)
{
    const std::uint32_t max_a = denominator.empty() ? 0 : *std::max_element(denominator.begin(), denominator.end());
    return std::size_t{max_a} + 5;
}

std::optional<RationalSeries> fit_rational(const GradedSeries& h, std::span<const std::uint32_t> denominator,
                                           std::size_t guard)
{
    std::uint32_t max_a = 0;
    for (std::uint32_t a : denominator) {
        if (a == 0)
            throw PreconditionError("denominator factor (1 - t^0) is not allowed");
        max_a = std::max(max_a, a);
    }
    if (guard < max_a)
        throw PreconditionError("guard " + std::to_string(guard) + " is smaller than the largest denominator exponent " +
                                std::to_string(max_a));
    if (h.empty() || h.truncation() < 2 * guard)
        throw PreconditionError("truncation " + std::to_string(h.truncation()) + " is below twice the guard " +
                                std::to_string(guard));

    const std::size_t n = h.truncation();
    std::vector<mpz_class> c = multiply_by_denominator(h.coefficients(), denominator);
    for (std::size_t i = n - guard + 1; i <= n; ++i)
        if (sgn(c[i]) != 0)
            return std::nullopt;
    c.resize(n - guard + 1);

    RationalSeries rs;
    rs.numerator = IntPolynomial(std::move(c));
    rs.denominator_exponents.assign(denominator.begin(), denominator.end());
    std::sort(rs.denominator_exponents.begin(), rs.denominator_exponents.end());
    return rs;
}

std::size_t root_multiplicity_at_one(const IntPolynomial& p)
{
    if (p.is_zero())
        throw PreconditionError("root multiplicity of the zero polynomial");
    std::vector<mpz_class> c = p.coefficients();
    std::size_t mult = 0;
    for (;;) {
        // Synthetic division by (t - 1), highest coefficient first.
        std::vector<mpz_class> q(c.size() - 1);
        mpz_class carry = 0;
        for (std::size_t i = c.size(); i-- > 0;) {
            carry += c[i];
            if (i > 0)
                q[i - 1] = carry;
        }
        if (sgn(carry) != 0)
            return mult;
        ++mult;
        c = std::move(q);
    }
}

std::size_t pole_order_at_one(const RationalSeries& rs)
{
    const std::size_t mult = root_multiplicity_at_one(rs.numerator);
    const std::size_t factors = rs.denominator_exponents.size();
    return factors > mult ? factors - mult : 0;
}

RegularityViolation::RegularityViolation(std::size_t degree, mpz_class value)
    : Error("multiplying by (1 - t^h) gives coefficient " + value.get_str() + " in degree " + std::to_string(degree) +
            "; the element is not a non-zero-divisor"),
      degree_(degree),
      value_(std::move(value))
{
}

GradedSeries regular_element_factor(const GradedSeries& p, std::size_t h)
{
    if (h == 0)
        throw PreconditionError("a regular element must have positive degree");
    std::vector<mpz_class> c = p.coefficients();
    for (std::size_t i = c.size(); i-- > h;)
        c[i] -= p[i - h];
    for (std::size_t i = 0; i < c.size(); ++i)
        if (sgn(c[i]) < 0)
            throw RegularityViolation(i, c[i]);
    return GradedSeries(std::move(c));
}

GradedSeries divide_by_regular_factor(const GradedSeries& p, std::size_t h)
{
    if (h == 0)
        throw PreconditionError("a regular element must have positive degree");
    std::vector<mpz_class> c = p.coefficients();
    for (std::size_t i = h; i < c.size(); ++i)
        c[i] += c[i - h];
    return GradedSeries(std::move(c));
}

double root_test_radius(const GradedSeries& h)
{
    if (h.truncation() < 10)
        throw PreconditionError("radius estimation needs truncation N >= 10");
    const std::size_t n = h.truncation();
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = (n + 1) / 2; i <= n; ++i)
        if (sgn(h[i]) > 0)
            best = std::max(best, log_of(h[i]) / static_cast<double>(i));
    if (best == -std::numeric_limits<double>::infinity())
        return std::numeric_limits<double>::infinity();
    return std::exp(-best);
}

double radius_estimate(const GradedSeries& h)
{
    if (h.truncation() < 10)
        throw PreconditionError("radius estimation needs truncation N >= 10");
    const std::size_t n = h.truncation();
    std::vector<std::size_t> points;
    for (std::size_t i = (n + 1) / 2; i <= n; ++i)
        if (sgn(h[i]) > 0)
            points.push_back(i);
    if (points.empty())
        return std::numeric_limits<double>::infinity();
    if (points.size() < 8)
        return root_test_radius(h);

    const double scale = static_cast<double>(n);
    Eigen::MatrixXd design(static_cast<Eigen::Index>(points.size()), 4);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(points.size()));
    for (std::size_t k = 0; k < points.size(); ++k) {
        const double x = static_cast<double>(points[k]);
        const auto row = static_cast<Eigen::Index>(k);
        design(row, 0) = 1.0;
        design(row, 1) = x / scale;
        design(row, 2) = std::sqrt(x / scale);
        design(row, 3) = std::log(x / scale);
        rhs(row) = log_of(h[points[k]]);
    }
    const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
    const double growth_rate = coef(1) / scale;
    return std::exp(-growth_rate);
}

std::string verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::HilbertSerre:
        return "HilbertSerre";
    case Verdict::NotHilbertSerre:
        return "NotHilbertSerre";
    case Verdict::UnknownAtTruncation:
        return "UnknownAtTruncation";
    }
    return "?";
}

std::string describe(const HSClassification& c)
{
    std::ostringstream os;
    os << verdict_name(c.verdict);
    if (c.verdict == Verdict::HilbertSerre && c.pole_order) {
        os << '(' << *c.pole_order << ')';
    } else if (c.verdict == Verdict::NotHilbertSerre) {
        if (c.reason == NonHSReason::RadiusBelowOne && c.radius) {
            os.setf(std::ios::fixed);
            os.precision(4);
            os << "(radius " << *c.radius << ')';
        } else if (c.reason == NonHSReason::PoleUnbounded) {
            os << "(pole-unbounded up to " << c.pole_bound_checked << ')';
        }
    }
    return os.str();
}

DenominatorCandidates default_denominator_candidates(std::span<const std::uint32_t> generator_degrees)
{
    DenominatorCandidates out;
    if (!generator_degrees.empty()) {
        std::vector<std::uint32_t> d(generator_degrees.begin(), generator_degrees.end());
        std::sort(d.begin(), d.end());
        out.push_back(std::move(d));
    }
    for (std::uint32_t k = 0; k <= 12; ++k)
        out.emplace_back(k, 1u);
    for (std::uint32_t l = 2; l <= 4; ++l)
        for (std::uint32_t k = 1; k <= 12; ++k)
            out.emplace_back(k, l);
    return out;
}

std::optional<RationalSeries> fit_first(const GradedSeries& h, const DenominatorCandidates& candidates)
{
    for (const auto& denom : candidates) {
        const std::size_t guard = default_guard(denom);
        if (h.empty() || h.truncation() < 2 * guard)
            continue;
        if (auto fit = fit_rational(h, denom, guard))
            return fit;
    }
    return std::nullopt;
}

bool pole_growth_exceeds(const GradedSeries& h, std::size_t d_max)
{
    const std::size_t n = h.truncation();
    if (n < 8)
        return false;
    std::vector<mpz_class> cumulative(n + 1);
    mpz_class running = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        running += h[i];
        cumulative[i] = running;
    }
    const std::size_t lo = n - n / 4;
    mpz_class lhs, rhs, pa, pb;
    for (std::size_t d = 0; d <= d_max; ++d) {
        for (std::size_t i = lo; i < n; ++i) {
            // A(i+1) * i^d > A(i) * (i+1)^d
            mpz_ui_pow_ui(pa.get_mpz_t(), i, d);
            mpz_ui_pow_ui(pb.get_mpz_t(), i + 1, d);
            lhs = cumulative[i + 1] * pa;
            rhs = cumulative[i] * pb;
            if (lhs <= rhs)
                return false;
        }
    }
    return true;
}

HSClassification classify_hilbert_serre(const GradedSeries& h, const DenominatorCandidates& candidates,
                                        std::size_t d_max, const ClassifyOptions& options)
{
    HSClassification out;
    out.pole_bound_checked = d_max;

    bool trivial = !h.empty();
    for (std::size_t i = 1; trivial && i < h.size(); ++i)
        trivial = sgn(h[i]) == 0;
    if (trivial && h.truncation() == 0 && h[0] == 1) {
        out.verdict = Verdict::HilbertSerre;
        out.pole_order = 0;
        out.fit = RationalSeries{IntPolynomial::from_integers({1}), {}};
        out.evidence = "series of the ground field";
        return out;
    }

    if (auto fit = fit_first(h, candidates)) {
        out.verdict = Verdict::HilbertSerre;
        out.pole_order = pole_order_at_one(*fit);
        out.evidence = "exact fit " + format_rational_series(*fit) + " with guard " +
                       std::to_string(default_guard(fit->denominator_exponents)) + " at truncation " +
                       std::to_string(h.truncation());
        out.fit = std::move(fit);
        if (h.truncation() >= 10)
            out.radius = radius_estimate(h);
        return out;
    }

    if (h.truncation() >= 10) {
        out.radius = radius_estimate(h);
        if (*out.radius < 1.0 - options.radius_margin) {
            out.verdict = Verdict::NotHilbertSerre;
            out.reason = NonHSReason::RadiusBelowOne;
            std::ostringstream os;
            os << "radius estimate " << *out.radius << " < 1 - " << options.radius_margin;
            out.evidence = os.str();
            return out;
        }
    }

    if (pole_growth_exceeds(h, d_max)) {
        out.verdict = Verdict::NotHilbertSerre;
        out.reason = NonHSReason::PoleUnbounded;
        const std::size_t n = h.truncation();
        out.evidence = "A(n)/n^d strictly increasing on [" + std::to_string(n - n / 4) + ", " + std::to_string(n) +
                       "] for every d <= " + std::to_string(d_max) + "; no candidate denominator fits";
        return out;
    }

    out.verdict = Verdict::UnknownAtTruncation;
    out.evidence = "no candidate denominator fits and no growth certificate at truncation " +
                   std::to_string(h.truncation());
    return out;
}

GradedSeries partition_series(std::size_t n)
{
    std::vector<mpz_class> p(n + 1);
    p[0] = 1;
    for (std::size_t m = 1; m <= n; ++m) {
        mpz_class sum = 0;
        for (std::size_t k = 1;; ++k) {
            const std::size_t g1 = k * (3 * k - 1) / 2;
            if (g1 > m)
                break;
            const std::size_t g2 = k * (3 * k + 1) / 2;
            mpz_class term = p[m - g1];
            if (g2 <= m)
                term += p[m - g2];
            if (k % 2 == 1)
                sum += term;
            else
                sum -= term;
        }
        p[m] = sum;
    }
    return GradedSeries(std::move(p));
}

GradedSeries power_sum_series(unsigned d, std::size_t n)
{
    if (d == 0)
        throw PreconditionError("power_sum_series needs d >= 1");
    std::vector<mpz_class> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        mpz_ui_pow_ui(c[i].get_mpz_t(), i, d);
        c[i] += 1;
    }
    return GradedSeries(std::move(c));
}

GradedSeries read_series(std::istream& is)
{
    std::vector<mpz_class> c;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::size_t pos = 0;
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])))
            ++pos;
        if (pos == line.size())
            continue;
        std::size_t end = pos;
        while (end < line.size() && std::isdigit(static_cast<unsigned char>(line[end])))
            ++end;
        if (end == pos)
            throw ParseError(lineno, pos + 1, "expected a non-negative integer");
        std::size_t rest = end;
        while (rest < line.size() && std::isspace(static_cast<unsigned char>(line[rest])))
            ++rest;
        if (rest != line.size())
            throw ParseError(lineno, rest + 1, "unexpected text after coefficient");
        c.emplace_back(line.substr(pos, end - pos));
    }
    return GradedSeries(std::move(c));
}

void write_series(std::ostream& os, const GradedSeries& h)
{
    for (const auto& c : h.coefficients())
        os << c.get_str() << '\n';
}

} // namespace gradim
