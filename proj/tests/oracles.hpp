// Reference computations used only by the tests. Each one is written the
// direct way, independent of the library's algorithms.
#ifndef GRADIM_TESTS_ORACLES_HPP
#define GRADIM_TESTS_ORACLES_HPP

#include <cstdint>
#include <set>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Vec = std::vector<unsigned>;

// h_n by exhaustive enumeration of generator multisets of degree <= n.
inline std::vector<long> brute_hilbert(const std::vector<Vec>& gens, const std::vector<unsigned>& weights, unsigned n)
{
    const std::size_t dim = weights.size();
    std::vector<std::set<Vec>> seen(n + 1);
    auto degree = [&](const Vec& v) {
        unsigned long d = 0;
        for (std::size_t i = 0; i < dim; ++i)
            d += static_cast<unsigned long>(v[i]) * weights[i];
        return d;
    };
    Vec cur(dim, 0);
    auto rec = [&](auto&& self, std::size_t first, unsigned long deg) -> void {
        seen[deg].insert(cur);
        for (std::size_t g = first; g < gens.size(); ++g) {
            const unsigned long dg = degree(gens[g]);
            if (dg == 0 || deg + dg > n)
                continue;
            for (std::size_t i = 0; i < dim; ++i)
                cur[i] += gens[g][i];
            self(self, g, deg + dg);
            for (std::size_t i = 0; i < dim; ++i)
                cur[i] -= gens[g][i];
        }
    };
    rec(rec, 0, 0);
    std::vector<long> h(n + 1);
    for (unsigned d = 0; d <= n; ++d)
        h[d] = static_cast<long>(seen[d].size());
    return h;
}

// Power series of num(t) / prod (1 - t^a) up to t^n, by dividing one
// factor at a time: c_k += c_{k-a}.
inline std::vector<mpz_class> series_of(const std::vector<long>& num, const std::vector<unsigned>& denom, unsigned n)
{
    std::vector<mpz_class> c(n + 1, 0);
    for (std::size_t i = 0; i < num.size() && i <= n; ++i)
        c[i] = num[i];
    for (unsigned a : denom)
        for (unsigned k = a; k <= n; ++k)
            c[k] += c[k - a];
    return c;
}

// Rank by plain Gaussian elimination over Q.
inline std::size_t rank(std::vector<std::vector<mpq_class>> m)
{
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0)
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            const mpq_class f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j)
                m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

inline std::size_t rank_of_vectors(const std::vector<Vec>& rows)
{
    std::vector<std::vector<mpq_class>> m;
    for (const auto& r : rows)
        m.emplace_back(r.begin(), r.end());
    return rank(m);
}

// p(0..n) by the coin-counting dynamic program.
inline std::vector<mpz_class> partitions(unsigned n)
{
    std::vector<mpz_class> p(n + 1, 0);
    p[0] = 1;
    for (unsigned part = 1; part <= n; ++part)
        for (unsigned k = part; k <= n; ++k)
            p[k] += p[k - part];
    return p;
}

inline std::vector<mpz_class> prefix_sums(const std::vector<mpz_class>& h)
{
    std::vector<mpz_class> a(h.size());
    mpz_class s = 0;
    for (std::size_t i = 0; i < h.size(); ++i)
        a[i] = s += h[i];
    return a;
}

inline long binomial(long n, long k)
{
    if (k < 0 || k > n)
        return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace oracle

#endif
