#ifndef GRADIM_LINALG_HPP
#define GRADIM_LINALG_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gradim/error.hpp"

namespace gradim {

/// Dense rectangular matrix of exact rationals, row-major.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    // Throws PreconditionError when the rows are ragged.
    static RationalMatrix from_rows(const std::vector<std::vector<mpq_class>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    mpq_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const mpq_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<mpq_class> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const mpq_class> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    RationalMatrix transpose() const;
    void swap_rows(std::size_t a, std::size_t b);

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<mpq_class> data_;
};

struct EchelonForm {
    RationalMatrix matrix;               // reduced; rows past rank() are zero
    std::vector<std::size_t> pivot_columns;  // original column indices, one per nonzero row
    std::size_t rank() const noexcept { return pivot_columns.size(); }
};

/// Reduced row echelon form. Columns are scanned in `pivot_order` (a
/// permutation of 0..cols-1; empty means natural order), so the i-th nonzero
/// row has its pivot at pivot_columns[i] and is zero in every column that
/// precedes it in pivot_order. Pivot entries are 1.
EchelonForm row_echelon(RationalMatrix m, std::span<const std::size_t> pivot_order = {});

std::size_t rank(const RationalMatrix& m);

using IntegerMatrix = std::vector<std::vector<mpz_class>>;

// Fraction-free (Bareiss) rank of an integer matrix.
std::size_t rank_fraction_free(IntegerMatrix m);

/// Row-style Hermite normal form: nonzero rows only, pivots positive and
/// strictly increasing in column, entries above each pivot reduced into
/// [0, pivot). Rows must share a common length.
IntegerMatrix hermite_normal_form(IntegerMatrix m);

/// Subgroup of Z^n generated by a finite list of integer vectors.
class IntegerLattice {
public:
    explicit IntegerLattice(std::size_t ambient_dim) : dim_(ambient_dim) {}
    IntegerLattice(std::size_t ambient_dim, IntegerMatrix generators);

    void add_generator(std::vector<mpz_class> v);

    std::size_t ambient_dim() const noexcept { return dim_; }
    const IntegerMatrix& generators() const noexcept { return gens_; }

private:
    std::size_t dim_;
    IntegerMatrix gens_;
};

std::size_t lattice_rank(const IntegerLattice& lattice);

// Plain-text row format: one row per line, entries separated by blanks,
// rationals written as p or p/q. Blank lines and '#' comments are ignored.
void write_matrix(std::ostream& os, const RationalMatrix& m);
RationalMatrix read_matrix(std::istream& is);

} // namespace gradim

#endif
