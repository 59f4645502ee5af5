#include "gradim/monomial.hpp"

#include <algorithm>
#include <numeric>

#include "gradim/error.hpp"
#include "gradim/linalg.hpp"

namespace gradim {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what)
{
    if (a != b)
        throw DimensionMismatch(std::string(what) + ": ambient dimensions " + std::to_string(a) + " and " +
                                std::to_string(b) + " differ");
}

} // namespace

ExponentVector ExponentVector::unit(std::size_t num_vars, std::size_t var, Exponent power)
{
    if (var >= num_vars)
        throw PreconditionError("variable index " + std::to_string(var) + " out of range");
    ExponentVector v(num_vars);
    v.exps_[var] = power;
    return v;
}

bool ExponentVector::is_one() const noexcept
{
    return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
}

Degree ExponentVector::total_degree() const noexcept
{
    return std::accumulate(exps_.begin(), exps_.end(), Degree{0});
}

bool ExponentVector::divides(const ExponentVector& other) const
{
    require_same_dim(size(), other.size(), "divides");
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > other.exps_[i])
            return false;
    return true;
}

ExponentVector& ExponentVector::operator+=(const ExponentVector& other)
{
    require_same_dim(size(), other.size(), "monomial product");
    for (std::size_t i = 0; i < exps_.size(); ++i)
        exps_[i] += other.exps_[i];
    return *this;
}

ExponentVector operator-(const ExponentVector& a, const ExponentVector& b)
{
    if (!b.divides(a))
        throw PreconditionError("monomial quotient is not a monomial");
    ExponentVector out = a;
    for (std::size_t i = 0; i < out.exps_.size(); ++i)
        out.exps_[i] -= b.exps_[i];
    return out;
}

ExponentVector ExponentVector::scaled(Exponent factor) const
{
    ExponentVector out = *this;
    for (auto& e : out.exps_)
        e *= factor;
    return out;
}

std::size_t ExponentVectorHash::operator()(const ExponentVector& v) const noexcept
{
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Exponent e : v.exponents()) {
        h ^= e;
        h *= 0x100000001b3ULL;
    }
    return h;
}

WeightVector::WeightVector(std::vector<std::uint32_t> weights) : weights_(std::move(weights))
{
    for (std::size_t i = 0; i < weights_.size(); ++i)
        if (weights_[i] == 0)
            throw PreconditionError("weight of variable " + std::to_string(i + 1) + " must be at least 1");
}

WeightVector WeightVector::ones(std::size_t num_vars)
{
    return WeightVector(std::vector<std::uint32_t>(num_vars, 1));
}

bool WeightVector::all_ones() const noexcept
{
    return std::all_of(weights_.begin(), weights_.end(), [](std::uint32_t w) { return w == 1; });
}

Degree weighted_degree(const ExponentVector& a, const WeightVector& w)
{
    require_same_dim(a.size(), w.size(), "weighted_degree");
    Degree d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d += Degree{a[i]} * w[i];
    return d;
}

MonomialOrder::MonomialOrder(std::size_t num_vars, std::vector<Row> rows, std::string name)
    : num_vars_(num_vars), rows_(std::move(rows)), name_(std::move(name))
{
}

MonomialOrder MonomialOrder::from_rows(std::vector<Row> rows, std::string name)
{
    if (rows.empty())
        throw PreconditionError("monomial order needs at least one row");
    const std::size_t n = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != n)
            throw PreconditionError("monomial order rows must all have " + std::to_string(n) + " entries");

    for (std::size_t c = 0; c < n; ++c) {
        auto first = std::find_if(rows.begin(), rows.end(), [c](const Row& r) { return r[c] != 0; });
        if (first == rows.end() || (*first)[c] < 0)
            throw PreconditionError("column " + std::to_string(c + 1) +
                                    " of the order matrix must have a positive first nonzero entry");
    }

    RationalMatrix m(rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < n; ++c)
            m(r, c) = mpq_class(static_cast<long>(rows[r][c]));
    if (rank(m) != n)
        throw PreconditionError("order matrix must have full column rank " + std::to_string(n));

    return MonomialOrder(n, std::move(rows), std::move(name));
}

MonomialOrder MonomialOrder::lex(std::size_t num_vars)
{
    std::vector<Row> rows(num_vars, Row(num_vars, 0));
    for (std::size_t i = 0; i < num_vars; ++i)
        rows[i][i] = 1;
    return from_rows(std::move(rows), "lex");
}

MonomialOrder MonomialOrder::grlex(std::size_t num_vars)
{
    std::vector<Row> rows{Row(num_vars, 1)};
    for (std::size_t i = 0; i < num_vars; ++i) {
        Row r(num_vars, 0);
        r[i] = 1;
        rows.push_back(std::move(r));
    }
    return from_rows(std::move(rows), "grlex");
}

MonomialOrder MonomialOrder::grevlex(std::size_t num_vars)
{
    std::vector<Row> rows{Row(num_vars, 1)};
    for (std::size_t i = num_vars; i-- > 1;) {
        Row r(num_vars, 0);
        r[i] = -1;
        rows.push_back(std::move(r));
    }
    return from_rows(std::move(rows), "grevlex");
}

MonomialOrder MonomialOrder::weighted_lex(const WeightVector& weights)
{
    const std::size_t n = weights.size();
    std::vector<Row> rows{Row(weights.weights().begin(), weights.weights().end())};
    for (std::size_t i = 0; i < n; ++i) {
        Row r(n, 0);
        r[i] = 1;
        rows.push_back(std::move(r));
    }
    return from_rows(std::move(rows), "weighted-lex");
}

MonomialOrder MonomialOrder::lex_permuted(std::span<const std::size_t> priority)
{
    const std::size_t n = priority.size();
    std::vector<Row> rows;
    for (std::size_t var : priority) {
        if (var >= n)
            throw PreconditionError("variable priority is not a permutation");
        Row r(n, 0);
        r[var] = 1;
        rows.push_back(std::move(r));
    }
    return from_rows(std::move(rows), "lex-permuted");
}

std::strong_ordering MonomialOrder::compare(const ExponentVector& a, const ExponentVector& b) const
{
    require_same_dim(a.size(), num_vars_, "compare");
    require_same_dim(b.size(), num_vars_, "compare");
    for (const Row& r : rows_) {
        __int128 da = 0;
        __int128 db = 0;
        for (std::size_t i = 0; i < num_vars_; ++i) {
            da += static_cast<__int128>(r[i]) * a[i];
            db += static_cast<__int128>(r[i]) * b[i];
        }
        if (da != db)
            return da < db ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::strong_ordering compare(const ExponentVector& a, const ExponentVector& b, const MonomialOrder& ord)
{
    return ord.compare(a, b);
}

Polynomial Polynomial::monomial(const ExponentVector& m, const mpq_class& coefficient)
{
    Polynomial p(m.size());
    p.add_term(m, coefficient);
    return p;
}

Polynomial Polynomial::constant(std::size_t num_vars, const mpq_class& c)
{
    return monomial(ExponentVector(num_vars), c);
}

mpq_class Polynomial::coefficient(const ExponentVector& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

void Polynomial::add_term(const ExponentVector& m, const mpq_class& c)
{
    require_same_dim(m.size(), num_vars_, "add_term");
    if (sgn(c) == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0)
            terms_.erase(it);
    }
}

std::optional<Degree> Polynomial::homogeneous_degree(const WeightVector& w) const
{
    if (terms_.empty())
        return std::nullopt;
    const Degree d = weighted_degree(terms_.begin()->first, w);
    for (const auto& [m, c] : terms_)
        if (weighted_degree(m, w) != d)
            return std::nullopt;
    return d;
}

Polynomial Polynomial::pow(unsigned e) const
{
    Polynomial result = constant(num_vars_, 1);
    Polynomial base = *this;
    while (e) {
        if (e & 1u)
            result = result * base;
        e >>= 1u;
        if (e)
            base = base * base;
    }
    return result;
}

Polynomial& Polynomial::operator+=(const Polynomial& other)
{
    require_same_dim(num_vars_, other.num_vars_, "polynomial sum");
    for (const auto& [m, c] : other.terms_)
        add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other)
{
    require_same_dim(num_vars_, other.num_vars_, "polynomial difference");
    for (const auto& [m, c] : other.terms_)
        add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const mpq_class& c)
{
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coeff] : terms_)
        coeff *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    require_same_dim(a.num_vars_, b.num_vars_, "polynomial product");
    Polynomial out(a.num_vars_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            out.add_term(ma + mb, ca * cb);
    return out;
}

Term leading_term(const Polynomial& f, const MonomialOrder& ord)
{
    if (f.is_zero())
        throw PreconditionError("leading term of the zero polynomial");
    auto best = f.terms().begin();
    for (auto it = std::next(best); it != f.terms().end(); ++it)
        if (ord.compare(it->first, best->first) > 0)
            best = it;
    return {best->first, best->second};
}

} // namespace gradim
