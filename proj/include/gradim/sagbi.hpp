#ifndef GRADIM_SAGBI_HPP
#define GRADIM_SAGBI_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "gradim/error.hpp"
#include "gradim/monomial.hpp"
#include "gradim/series.hpp"
#include "gradim/text.hpp"

namespace gradim {

/// k[f_1, ..., f_m] inside k[x_1, ..., x_n], with homogeneous generators of
/// positive weighted degree and a term order for initial forms.
class SubalgebraPresentation {
public:
    // Throws PreconditionError when a generator is zero, constant or
    // inhomogeneous, or when dimensions disagree.
    SubalgebraPresentation(std::vector<Polynomial> generators, WeightVector weights, MonomialOrder order);

    std::size_t num_vars() const noexcept { return weights_.size(); }
    const std::vector<Polynomial>& generators() const noexcept { return generators_; }
    const std::vector<Degree>& generator_degrees() const noexcept { return degrees_; }
    const WeightVector& weights() const noexcept { return weights_; }
    const MonomialOrder& order() const noexcept { return order_; }

private:
    std::vector<Polynomial> generators_;
    std::vector<Degree> degrees_;
    WeightVector weights_;
    MonomialOrder order_;
};

struct SearchLimits {
    std::size_t max_nodes = 1'000'000;        // monoid-membership search
    std::size_t max_combinations = 200'000;   // products of generators in one degree

    // Reads GRADIM_MAX_NODES and GRADIM_MAX_COMBINATIONS when set.
    static SearchLimits from_environment();
};

/// Exponents e with sum_i e_i * atoms[i] == target, the lexicographically
/// greatest such tuple, or nullopt when none exists. Atoms must be nonzero
/// and share the target's dimension; `weights` prunes by degree. Throws
/// CapacityError after limits.max_nodes search nodes.
std::optional<std::vector<unsigned>> factor_monomial(const ExponentVector& target,
                                                     std::span<const ExponentVector> atoms, const WeightVector& weights,
                                                     const SearchLimits& limits = {});

struct ComponentBasis {
    std::vector<Polynomial> basis;              // reduced echelon basis of S_n, leading coefficient 1
    std::vector<ExponentVector> leading_monomials;  // in_<(basis[i]), strictly decreasing
    std::size_t combinations = 0;               // products of generators expanded
};

/// Basis of the degree-n component S_n: expand every product of generators
/// of weighted degree n, then row-reduce with columns sorted from the
/// largest monomial down. The pivot monomials are exactly in_<(S)_n.
ComponentBasis degree_component_basis(const SubalgebraPresentation& s, std::size_t n, const SearchLimits& limits = {});

class NonTermination : public Error {
public:
    NonTermination(std::size_t steps, Polynomial remainder);
    std::size_t steps() const noexcept { return steps_; }
    const Polynomial& remainder() const noexcept { return remainder_; }

private:
    std::size_t steps_;
    Polynomial remainder_;
};

struct SubductionResult {
    Polynomial remainder;
    std::size_t steps = 0;
};

/// Subduction of f by the family F: while in(f) factors as prod in(F_i)^{e_i}
/// (lexicographically greatest e), subtract the matching multiple of
/// prod F_i^{e_i}. Stops at a zero or irreducible remainder. Throws
/// NonTermination when max_steps reductions did not finish.
SubductionResult subduct(const Polynomial& f, std::span<const Polynomial> family, const MonomialOrder& ord,
                         std::size_t max_steps, const WeightVector& weights, const SearchLimits& limits = {});
SubductionResult subduct(const Polynomial& f, std::span<const Polynomial> family, const MonomialOrder& ord,
                         std::size_t max_steps);

struct InitialGenerator {
    ExponentVector monomial;
    std::size_t degree;
    Polynomial witness;  // element of S whose initial monomial is `monomial`
};

struct InitialAlgebraTruncation {
    std::size_t degree_bound = 0;
    std::vector<std::vector<ExponentVector>> leading_monomials;  // index n: in_<(S)_n, n = 0..D
    std::vector<InitialGenerator> new_generators;                // in order of discovery
    std::optional<std::size_t> stabilized_at;

    std::vector<std::size_t> component_dimensions() const;
};

/// Degree-by-degree initial algebra up to D. A pivot monomial of degree n is
/// a new generator when it is not a product of generators found in lower
/// degrees. stabilized_at is the last degree that produced a generator,
/// unless that degree is D itself.
InitialAlgebraTruncation initial_algebra_truncation(const SubalgebraPresentation& s, std::size_t d,
                                                    const SearchLimits& limits = {});

struct PoincareComparison {
    bool equal = false;
    std::optional<std::size_t> first_discrepancy;
    std::vector<std::size_t> subalgebra_dims;  // rank of S_n
    GradedSeries initial_series;               // enumerated from the initial generators
    InitialAlgebraTruncation truncation;
};

// Compares dim S_n with the Hilbert function of the monoid generated by the
// discovered initial generators, for n <= D.
PoincareComparison verify_poincare_equality(const SubalgebraPresentation& s, std::size_t d,
                                            const SearchLimits& limits = {});

/// k[x + y + z, xy, xy^2] in k[x, y, z] under the order comparing a1 + a2
/// first and breaking ties lexicographically.
SubalgebraPresentation pure_power_free_example();

struct PurePowerCheck {
    bool no_pure_power_leading = false;     // no y^j among the pivot monomials of any degree
    bool all_xy_powers_found = false;       // x*y^m is a new generator for 2 <= m <= D - 1
    std::vector<ExponentVector> offending;  // pure powers of y seen, if any
    std::vector<unsigned> missing;          // m with x*y^m not discovered
    InitialAlgebraTruncation truncation;
    bool passed() const noexcept { return no_pure_power_leading && all_xy_powers_found; }
};

// Requires D >= 3.
PurePowerCheck example53_invariant_check(std::size_t d, const SearchLimits& limits = {});

/// Subalgebra file:
///   vars: x y z            (optional; default x1..xn)
///   weights: 1 1 1         (optional; default all 1)
///   order: lex | grlex | grevlex | [r11 r12 ...; r21 ...]   (optional; default grlex)
///   generators:
///   <one polynomial per line>
struct SubalgebraFile {
    VariableNames vars;
    SubalgebraPresentation subalgebra;
};

SubalgebraFile read_subalgebra(std::istream& is);
void write_subalgebra(std::ostream& os, const SubalgebraFile& file);

} // namespace gradim

#endif
