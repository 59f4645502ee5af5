#include "gradim/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "gradim/error.hpp"

namespace gradim {

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<mpq_class>>& rows)
{
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    RationalMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw PreconditionError("ragged matrix: row " + std::to_string(r) + " has " +
                                    std::to_string(rows[r].size()) + " entries, expected " + std::to_string(cols));
        std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    }
    return m;
}

RationalMatrix RationalMatrix::transpose() const
{
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

void RationalMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    auto ra = row(a);
    auto rb = row(b);
    std::swap_ranges(ra.begin(), ra.end(), rb.begin());
}

EchelonForm row_echelon(RationalMatrix m, std::span<const std::size_t> pivot_order)
{
    std::vector<std::size_t> order;
    if (pivot_order.empty()) {
        order.resize(m.cols());
        std::iota(order.begin(), order.end(), std::size_t{0});
    } else {
        order.assign(pivot_order.begin(), pivot_order.end());
        std::vector<std::size_t> check = order;
        std::sort(check.begin(), check.end());
        bool is_perm = check.size() == m.cols();
        for (std::size_t i = 0; is_perm && i < check.size(); ++i)
            is_perm = check[i] == i;
        if (!is_perm)
            throw PreconditionError("pivot order is not a permutation of the columns");
    }

    EchelonForm out;
    std::size_t lead = 0;
    mpq_class factor;
    for (std::size_t col : order) {
        if (lead == m.rows())
            break;
        std::size_t pivot = lead;
        while (pivot < m.rows() && sgn(m(pivot, col)) == 0)
            ++pivot;
        if (pivot == m.rows())
            continue;
        m.swap_rows(pivot, lead);

        const mpq_class inv = 1 / m(lead, col);
        for (auto& x : m.row(lead))
            if (sgn(x) != 0)
                x *= inv;

        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead || sgn(m(r, col)) == 0)
                continue;
            factor = m(r, col);
            auto target = m.row(r);
            auto source = m.row(lead);
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (sgn(source[c]) != 0)
                    target[c] -= factor * source[c];
        }
        out.pivot_columns.push_back(col);
        ++lead;
    }
    out.matrix = std::move(m);
    return out;
}

std::size_t rank(const RationalMatrix& m)
{
    return row_echelon(m).rank();
}

std::size_t rank_fraction_free(IntegerMatrix m)
{
    if (m.empty())
        return 0;
    const std::size_t cols = m.front().size();
    std::size_t r = 0;
    mpz_class prev = 1;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && sgn(m[p][c]) == 0)
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                m[i][j] = m[r][c] * m[i][j] - m[i][c] * m[r][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return r;
}

IntegerMatrix hermite_normal_form(IntegerMatrix m)
{
    if (m.empty())
        return m;
    const std::size_t cols = m.front().size();
    for (const auto& row : m)
        if (row.size() != cols)
            throw PreconditionError("ragged integer matrix");

    std::size_t r = 0;
    mpz_class g, s, t, a, b;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        // Fold every row below r into row r with extended gcd steps on column c.
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (sgn(m[i][c]) == 0)
                continue;
            if (sgn(m[r][c]) == 0) {
                std::swap(m[r], m[i]);
                continue;
            }
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m[r][c].get_mpz_t(), m[i][c].get_mpz_t());
            a = m[r][c] / g;
            b = m[i][c] / g;
            for (std::size_t j = c; j < cols; ++j) {
                mpz_class top = s * m[r][j] + t * m[i][j];
                mpz_class bottom = a * m[i][j] - b * m[r][j];
                m[r][j] = std::move(top);
                m[i][j] = std::move(bottom);
            }
        }
        if (sgn(m[r][c]) == 0)
            continue;
        if (sgn(m[r][c]) < 0)
            for (std::size_t j = c; j < cols; ++j)
                m[r][j] = -m[r][j];
        for (std::size_t i = 0; i < r; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
            if (sgn(q) != 0)
                for (std::size_t j = c; j < cols; ++j)
                    m[i][j] -= q * m[r][j];
        }
        ++r;
    }
    m.resize(r);
    return m;
}

IntegerLattice::IntegerLattice(std::size_t ambient_dim, IntegerMatrix generators) : dim_(ambient_dim)
{
    for (auto& g : generators)
        add_generator(std::move(g));
}

void IntegerLattice::add_generator(std::vector<mpz_class> v)
{
    if (v.size() != dim_)
        throw DimensionMismatch("lattice generator has length " + std::to_string(v.size()) + ", expected " +
                                std::to_string(dim_));
    gens_.push_back(std::move(v));
}

std::size_t lattice_rank(const IntegerLattice& lattice)
{
    return hermite_normal_form(lattice.generators()).size();
}

void write_matrix(std::ostream& os, const RationalMatrix& m)
{
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c)
                os << ' ';
            os << m(r, c).get_str();
        }
        os << '\n';
    }
}

RationalMatrix read_matrix(std::istream& is)
{
    std::vector<std::vector<mpq_class>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::vector<mpq_class> row;
        std::size_t pos = 0;
        while (pos < line.size()) {
            while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])))
                ++pos;
            if (pos == line.size())
                break;
            std::size_t end = pos;
            while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end])))
                ++end;
            const std::string token = line.substr(pos, end - pos);
            mpq_class value;
            if (value.set_str(token, 10) != 0 || (token.find('/') != std::string::npos && token.back() == '/'))
                throw ParseError(lineno, pos + 1, "not a rational number: '" + token + "'");
            if (token.find('/') != std::string::npos) {
                const std::string den = token.substr(token.find('/') + 1);
                if (mpz_class(den) == 0)
                    throw ParseError(lineno, pos + 1, "zero denominator");
            }
            value.canonicalize();
            row.push_back(value);
            pos = end;
        }
        if (row.empty())
            continue;
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError(lineno, 1,
                             "row has " + std::to_string(row.size()) + " entries, expected " +
                                 std::to_string(rows.front().size()));
        rows.push_back(std::move(row));
    }
    return RationalMatrix::from_rows(rows);
}

} // namespace gradim
