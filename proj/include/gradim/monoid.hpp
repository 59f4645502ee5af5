#ifndef GRADIM_MONOID_HPP
#define GRADIM_MONOID_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gradim/monomial.hpp"
#include "gradim/series.hpp"
#include "gradim/text.hpp"

namespace gradim {

/// Finitely generated submonoid of N^n, graded by a weight vector.
/// Infinite families are materialized up to the degree of interest.
class MonoidPresentation {
public:
    // Throws on a zero generator or a dimension mismatch.
    MonoidPresentation(std::size_t num_vars, std::vector<ExponentVector> generators, WeightVector weights);
    MonoidPresentation(std::size_t num_vars, std::vector<ExponentVector> generators);

    std::size_t num_vars() const noexcept { return num_vars_; }
    const std::vector<ExponentVector>& generators() const noexcept { return generators_; }
    const WeightVector& weights() const noexcept { return weights_; }

    std::vector<std::uint32_t> generator_degrees() const;

private:
    std::size_t num_vars_;
    std::vector<ExponentVector> generators_;
    WeightVector weights_;
};

struct EnumerationLimits {
    enum class Backend { Auto, Packed, Sparse };

    std::size_t max_elements = 50'000'000;  // total monoid elements of degree <= N held at once
    Backend backend = Backend::Auto;

    // Reads GRADIM_MAX_ELEMENTS when set.
    static EnumerationLimits from_environment();
};

/// h_n = number of distinct monoid elements of weighted degree n, n <= N.
///
/// Degree-stratified closure: the elements of degree n are the deduplicated
/// union of (elements of degree n - deg g) + g over the generators g.
/// Generators of degree > N never contribute and are ignored. Throws
/// CapacityError when the element cap is exceeded.
GradedSeries hilbert_function(const MonoidPresentation& m, std::size_t n, const EnumerationLimits& limits = {});

// Rank of the group generated by the generators.
std::size_t monoid_rank(const MonoidPresentation& m);

/// A(N) = h_0 + ... + h_N.
class GrowthTable {
public:
    explicit GrowthTable(std::vector<mpz_class> cumulative);
    std::size_t size() const noexcept { return cumulative_.size(); }
    const mpz_class& operator[](std::size_t n) const { return cumulative_[n]; }
    const std::vector<mpz_class>& values() const noexcept { return cumulative_; }

private:
    std::vector<mpz_class> cumulative_;
};

GrowthTable growth_table(const GradedSeries& h);

/// Least-squares slope of log A(N) against log N over N in [lo, hi].
/// Throws PreconditionError unless 2 <= lo, hi < size, and the window holds
/// at least 5 points.
double gk_slope(const GrowthTable& a, std::size_t lo, std::size_t hi);

enum class GrowthStatus { WithinTolerance, UnknownAtTruncation };

struct DimensionOptions {
    std::size_t growth_truncation = 200;  // N for the slope window [N/2, N]
    double slope_tolerance = 0.2;
    EnumerationLimits limits{};
};

struct DimensionReport {
    std::size_t krull_dim = 0;
    std::size_t trdeg = 0;
    std::optional<std::size_t> pole_order;  // nullopt: no candidate fits at this truncation
    std::optional<RationalSeries> fit;
    double gk_estimate = 0.0;
    GrowthStatus gk_status = GrowthStatus::UnknownAtTruncation;
    bool all_equal = false;
    GradedSeries series;  // h up to the fit truncation
};

/// Krull dimension and transcendence degree are the rank of the generated
/// group. The pole order comes from the first candidate denominator that
/// fits h up to `n`; the growth estimate from gk_slope on the cumulative
/// counts up to options.growth_truncation. all_equal requires the pole order
/// to equal the rank and the slope to lie within the tolerance of it.
DimensionReport dimension_report(const MonoidPresentation& m, std::size_t n, const DimensionOptions& options = {});

/// Monoid file: optional `vars:` and `weights:` header lines, then one
/// generator per line in the monomial grammar. Without `vars:` the indexed
/// names x1..xn are used with n the largest index present.
struct MonoidFile {
    VariableNames vars;
    MonoidPresentation monoid;
};

MonoidFile read_monoid(std::istream& is);
void write_monoid(std::ostream& os, const MonoidFile& file);

} // namespace gradim

#endif
