#include "gradim/monoid.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "gradim/error.hpp"
#include "gradim/linalg.hpp"

namespace gradim {

MonoidPresentation::MonoidPresentation(std::size_t num_vars, std::vector<ExponentVector> generators,
                                       WeightVector weights)
    : num_vars_(num_vars), generators_(std::move(generators)), weights_(std::move(weights))
{
    if (weights_.size() != num_vars_)
        throw DimensionMismatch("weight vector has " + std::to_string(weights_.size()) + " entries, expected " +
                                std::to_string(num_vars_));
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (generators_[i].size() != num_vars_)
            throw DimensionMismatch("generator " + std::to_string(i + 1) + " has " +
                                    std::to_string(generators_[i].size()) + " exponents, expected " +
                                    std::to_string(num_vars_));
        if (generators_[i].is_one())
            throw PreconditionError("generator " + std::to_string(i + 1) + " is the unit monomial");
    }
}

MonoidPresentation::MonoidPresentation(std::size_t num_vars, std::vector<ExponentVector> generators)
    : MonoidPresentation(num_vars, std::move(generators), WeightVector::ones(num_vars))
{
}

std::vector<std::uint32_t> MonoidPresentation::generator_degrees() const
{
    std::vector<std::uint32_t> out;
    out.reserve(generators_.size());
    for (const auto& g : generators_)
        out.push_back(static_cast<std::uint32_t>(weighted_degree(g, weights_)));
    return out;
}

EnumerationLimits EnumerationLimits::from_environment()
{
    EnumerationLimits limits;
    if (const char* v = std::getenv("GRADIM_MAX_ELEMENTS")) {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(v, &end, 10);
        if (end != v && *end == '\0' && parsed > 0)
            limits.max_elements = static_cast<std::size_t>(parsed);
    }
    return limits;
}

namespace {

struct Generator {
    ExponentVector exps;
    std::size_t degree;
};

std::vector<Generator> usable_generators(const MonoidPresentation& m, std::size_t n)
{
    std::vector<Generator> gens;
    for (const auto& g : m.generators()) {
        const Degree d = weighted_degree(g, m.weights());
        if (d <= n)
            gens.push_back({g, static_cast<std::size_t>(d)});
    }
    std::sort(gens.begin(), gens.end(), [](const Generator& a, const Generator& b) {
        return a.degree != b.degree ? a.degree < b.degree : a.exps < b.exps;
    });
    gens.erase(std::unique(gens.begin(), gens.end(),
                           [](const Generator& a, const Generator& b) { return a.exps == b.exps; }),
               gens.end());
    return gens;
}

// Bit layout for packing exponent vectors into one 64-bit word. Every
// coordinate of an element of degree <= N is at most N / w_i, so sums of
// packed values never carry between fields.
struct PackedLayout {
    std::vector<unsigned> shift;

    static std::optional<PackedLayout> make(const WeightVector& w, std::size_t n)
    {
        PackedLayout layout;
        unsigned used = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const std::uint64_t bound = n / w[i];
            const unsigned bits = std::max(1u, static_cast<unsigned>(std::bit_width(bound)));
            layout.shift.push_back(used);
            used += bits;
            if (used > 64)
                return std::nullopt;
        }
        return layout;
    }

    std::uint64_t pack(const ExponentVector& v) const
    {
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
            out |= std::uint64_t{v[i]} << shift[i];
        return out;
    }
};

void check_capacity(std::size_t held, const EnumerationLimits& limits)
{
    if (held > limits.max_elements)
        throw CapacityError("monoid enumeration exceeded its element cap", held, limits.max_elements);
}

GradedSeries enumerate_packed(const std::vector<Generator>& gens, const PackedLayout& layout, std::size_t n,
                              const EnumerationLimits& limits)
{
    std::size_t max_deg = 1;
    for (const auto& g : gens)
        max_deg = std::max(max_deg, g.degree);
    std::vector<std::uint64_t> packed;
    for (const auto& g : gens)
        packed.push_back(layout.pack(g.exps));

    const std::size_t ring = max_deg + 1;
    std::vector<std::vector<std::uint64_t>> layers(ring);
    std::vector<mpz_class> h(n + 1);
    layers[0] = {0};
    h[0] = 1;
    std::size_t held = 1;

    std::vector<std::vector<std::uint64_t>> runs;
    std::vector<std::uint64_t> merged;
    for (std::size_t deg = 1; deg <= n; ++deg) {
        runs.clear();
        for (std::size_t j = 0; j < gens.size(); ++j) {
            if (gens[j].degree > deg)
                break;
            const auto& src = layers[(deg - gens[j].degree) % ring];
            if (src.empty())
                continue;
            std::vector<std::uint64_t> shifted(src.size());
            std::transform(src.begin(), src.end(), shifted.begin(),
                           [p = packed[j]](std::uint64_t v) { return v + p; });
            runs.push_back(std::move(shifted));
        }
        while (runs.size() > 1) {
            std::vector<std::vector<std::uint64_t>> next;
            for (std::size_t i = 0; i + 1 < runs.size(); i += 2) {
                merged.clear();
                merged.reserve(runs[i].size() + runs[i + 1].size());
                std::set_union(runs[i].begin(), runs[i].end(), runs[i + 1].begin(), runs[i + 1].end(),
                               std::back_inserter(merged));
                next.push_back(merged);
            }
            if (runs.size() % 2 == 1)
                next.push_back(std::move(runs.back()));
            runs = std::move(next);
        }
        auto& slot = layers[deg % ring];
        held -= slot.size();
        if (runs.empty())
            slot.clear();
        else
            slot = std::move(runs.front());
        held += slot.size();
        check_capacity(held, limits);
        h[deg] = static_cast<unsigned long>(slot.size());
    }
    return GradedSeries(std::move(h));
}

// Elements stored as sorted (variable, exponent) pairs packed into 32-bit
// words: variable in the high half, exponent in the low half.
class SparseLayer {
public:
    std::size_t size() const noexcept { return labels_.size(); }
    std::span<const std::uint32_t> element(std::size_t i) const
    {
        return {words_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }
    std::uint32_t label(std::size_t i) const { return labels_[i]; }

    // Inserts unless present; returns true if inserted.
    bool insert(std::span<const std::uint32_t> key, std::uint32_t label)
    {
        if ((labels_.size() + 1) * 2 > table_.size())
            grow();
        const std::size_t mask = table_.size() - 1;
        for (std::size_t slot = hash(key) & mask;; slot = (slot + 1) & mask) {
            const std::uint32_t idx = table_[slot];
            if (idx == kEmpty) {
                table_[slot] = static_cast<std::uint32_t>(labels_.size());
                words_.insert(words_.end(), key.begin(), key.end());
                offsets_.push_back(words_.size());
                labels_.push_back(label);
                return true;
            }
            auto existing = element(idx);
            if (std::equal(existing.begin(), existing.end(), key.begin(), key.end()))
                return false;
        }
    }

    // Drops the lookup table once the layer is complete.
    void freeze()
    {
        table_.clear();
        table_.shrink_to_fit();
        words_.shrink_to_fit();
    }

private:
    static constexpr std::uint32_t kEmpty = 0xffffffffu;

    static std::size_t hash(std::span<const std::uint32_t> key)
    {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ key.size();
        for (std::uint32_t w : key) {
            h ^= w;
            h *= 0xff51afd7ed558ccdULL;
            h ^= h >> 32;
        }
        return static_cast<std::size_t>(h);
    }

    void grow()
    {
        std::vector<std::uint32_t> table(std::max<std::size_t>(16, table_.size() * 2), kEmpty);
        const std::size_t mask = table.size() - 1;
        for (std::uint32_t i = 0; i < labels_.size(); ++i) {
            std::size_t slot = hash(element(i)) & mask;
            while (table[slot] != kEmpty)
                slot = (slot + 1) & mask;
            table[slot] = i;
        }
        table_ = std::move(table);
    }

    std::vector<std::uint32_t> words_;
    std::vector<std::size_t> offsets_{0};
    std::vector<std::uint32_t> labels_;
    std::vector<std::uint32_t> table_;
};

std::vector<std::uint32_t> sparse_key(const ExponentVector& v)
{
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0)
            out.push_back(static_cast<std::uint32_t>(i << 16) | v[i]);
    return out;
}

void sparse_add(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, std::vector<std::uint32_t>& out)
{
    out.clear();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && (a[i] >> 16) < (b[j] >> 16))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || (b[j] >> 16) < (a[i] >> 16)) {
            out.push_back(b[j++]);
        } else {
            out.push_back(a[i] + (b[j] & 0xffffu));
            ++i;
            ++j;
        }
    }
}

// Each element carries the smallest index j such that it is a sum of
// generators with indices <= j. Extending only by generators with index >=
// that label visits every multiset of generators once, so duplicates arise
// only from genuine coincidences.
GradedSeries enumerate_sparse(const std::vector<Generator>& gens, std::size_t num_vars, std::size_t n,
                              const EnumerationLimits& limits)
{
    if (num_vars > 0xffffu || n > 0xffffu)
        throw CapacityError("sparse monoid enumeration supports at most 65535 variables and degree 65535",
                            std::max(num_vars, n), 0xffffu);

    std::vector<std::vector<std::uint32_t>> keys;
    for (const auto& g : gens)
        keys.push_back(sparse_key(g.exps));

    std::vector<SparseLayer> layers(n + 1);
    layers[0].insert({}, 0);
    layers[0].freeze();
    std::vector<mpz_class> h(n + 1);
    h[0] = 1;
    std::size_t held = 1;
    std::vector<std::uint32_t> scratch;

    for (std::size_t deg = 1; deg <= n; ++deg) {
        SparseLayer& layer = layers[deg];
        for (std::uint32_t j = 0; j < gens.size(); ++j) {
            if (gens[j].degree > deg)
                break;
            const SparseLayer& src = layers[deg - gens[j].degree];
            for (std::size_t e = 0; e < src.size(); ++e) {
                if (src.label(e) > j)
                    continue;
                sparse_add(src.element(e), keys[j], scratch);
                if (layer.insert(scratch, j) && ++held > limits.max_elements)
                    check_capacity(held, limits);
            }
        }
        layer.freeze();
        h[deg] = static_cast<unsigned long>(layer.size());
    }
    return GradedSeries(std::move(h));
}

} // namespace

GradedSeries hilbert_function(const MonoidPresentation& m, std::size_t n, const EnumerationLimits& limits)
{
    const std::vector<Generator> gens = usable_generators(m, n);
    using Backend = EnumerationLimits::Backend;
    if (limits.backend != Backend::Sparse) {
        if (auto layout = PackedLayout::make(m.weights(), n))
            return enumerate_packed(gens, *layout, n, limits);
        if (limits.backend == Backend::Packed)
            throw CapacityError("exponent vectors do not fit the packed 64-bit layout", m.num_vars(), 64);
    }
    return enumerate_sparse(gens, m.num_vars(), n, limits);
}

std::size_t monoid_rank(const MonoidPresentation& m)
{
    IntegerLattice lattice(m.num_vars());
    for (const auto& g : m.generators()) {
        std::vector<mpz_class> row;
        row.reserve(g.size());
        for (Exponent e : g.exponents())
            row.emplace_back(static_cast<unsigned long>(e));
        lattice.add_generator(std::move(row));
    }
    return lattice_rank(lattice);
}

GrowthTable::GrowthTable(std::vector<mpz_class> cumulative) : cumulative_(std::move(cumulative))
{
    for (std::size_t i = 1; i < cumulative_.size(); ++i)
        if (cumulative_[i] < cumulative_[i - 1])
            throw PreconditionError("growth table must be non-decreasing");
}

GrowthTable growth_table(const GradedSeries& h)
{
    std::vector<mpz_class> a(h.size());
    mpz_class running = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        running += h[i];
        a[i] = running;
    }
    return GrowthTable(std::move(a));
}

double gk_slope(const GrowthTable& a, std::size_t lo, std::size_t hi)
{
    if (lo < 2)
        throw PreconditionError("slope window must start at N >= 2");
    if (hi >= a.size())
        throw PreconditionError("slope window ends at " + std::to_string(hi) + " beyond the table (size " +
                                std::to_string(a.size()) + ")");
    if (hi < lo || hi - lo + 1 < 5)
        throw PreconditionError("slope window needs at least 5 points");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double count = static_cast<double>(hi - lo + 1);
    for (std::size_t n = lo; n <= hi; ++n) {
        if (sgn(a[n]) <= 0)
            throw PreconditionError("growth table entry A(" + std::to_string(n) + ") is not positive");
        long exp2 = 0;
        const double mant = mpz_get_d_2exp(&exp2, a[n].get_mpz_t());
        const double y = std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
        const double x = std::log(static_cast<double>(n));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

DimensionReport dimension_report(const MonoidPresentation& m, std::size_t n, const DimensionOptions& options)
{
    DimensionReport report;
    const std::size_t rank = monoid_rank(m);
    report.krull_dim = rank;
    report.trdeg = rank;

    const std::size_t top = std::max(n, options.growth_truncation);
    const GradedSeries full = hilbert_function(m, top, options.limits);
    report.series = full.truncated(n);

    const std::vector<std::uint32_t> degrees = m.generator_degrees();
    report.fit = fit_first(report.series, default_denominator_candidates(degrees));
    if (report.fit)
        report.pole_order = pole_order_at_one(*report.fit);

    const std::size_t g = options.growth_truncation;
    if (g >= 10) {
        const GrowthTable table = growth_table(full.truncated(g));
        report.gk_estimate = gk_slope(table, std::max<std::size_t>(2, g / 2), g);
        if (std::abs(report.gk_estimate - static_cast<double>(rank)) <= options.slope_tolerance)
            report.gk_status = GrowthStatus::WithinTolerance;
    }
    report.all_equal = report.pole_order && *report.pole_order == rank &&
                       report.gk_status == GrowthStatus::WithinTolerance;
    return report;
}

namespace {

std::string strip_comment(const std::string& line)
{
    const auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

bool blank(const std::string& s)
{
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

std::size_t first_non_space(const std::string& s)
{
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
        ++i;
    return i;
}

std::vector<std::string> split_words(const std::string& s)
{
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string w; is >> w;)
        out.push_back(w);
    return out;
}

} // namespace

MonoidFile read_monoid(std::istream& is)
{
    struct Line {
        std::size_t number;
        std::size_t column;
        std::string text;
    };
    std::optional<std::vector<std::string>> names;
    std::optional<std::vector<std::uint32_t>> weights;
    std::size_t weights_line = 0;
    std::vector<Line> gens;

    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        const std::string line = strip_comment(raw);
        if (blank(line))
            continue;
        const std::size_t start = first_non_space(line);
        const std::string body = line.substr(start);
        if (body.rfind("vars:", 0) == 0) {
            if (!gens.empty() || names)
                throw ParseError(lineno, start + 1, "'vars:' must appear once, before the generators");
            names = split_words(body.substr(5));
            try {
                VariableNames check(*names);
            } catch (const PreconditionError& e) {
                throw ParseError(lineno, start + 6, e.what());
            }
        } else if (body.rfind("weights:", 0) == 0) {
            if (!gens.empty() || weights)
                throw ParseError(lineno, start + 1, "'weights:' must appear once, before the generators");
            weights.emplace();
            weights_line = lineno;
            for (const auto& w : split_words(body.substr(8))) {
                if (w.empty() || !std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
                    w.size() > 9 || std::stoul(w) == 0)
                    throw ParseError(lineno, start + 1 + body.find(w), "weights must be positive integers");
                weights->push_back(static_cast<std::uint32_t>(std::stoul(w)));
            }
        } else {
            gens.push_back({lineno, start, body});
        }
    }

    VariableNames vars = VariableNames::indexed(0);
    if (names) {
        vars = VariableNames(*names);
    } else {
        std::size_t n = 0;
        for (const auto& g : gens)
            n = std::max(n, max_indexed_variable(g.text));
        if (weights)
            n = std::max(n, weights->size());
        vars = VariableNames::indexed(n);
    }
    if (weights && weights->size() != vars.size())
        throw ParseError(weights_line, 1,
                         "expected " + std::to_string(vars.size()) + " weights, found " + std::to_string(weights->size()));

    std::vector<ExponentVector> exps;
    for (const auto& g : gens) {
        ExponentVector e = parse_monomial(g.text, vars, g.number, g.column);
        if (e.is_one())
            throw ParseError(g.number, g.column + 1, "the unit monomial is not a generator");
        exps.push_back(std::move(e));
    }
    WeightVector w = weights ? WeightVector(*weights) : WeightVector::ones(vars.size());
    return MonoidFile{vars, MonoidPresentation(vars.size(), std::move(exps), std::move(w))};
}

void write_monoid(std::ostream& os, const MonoidFile& file)
{
    if (!file.vars.is_indexed()) {
        os << "vars:";
        for (const auto& n : file.vars.names())
            os << ' ' << n;
        os << '\n';
    }
    if (!file.monoid.weights().all_ones()) {
        os << "weights:";
        for (auto w : file.monoid.weights().weights())
            os << ' ' << w;
        os << '\n';
    }
    for (const auto& g : file.monoid.generators())
        os << format_monomial(g, file.vars) << '\n';
}

} // namespace gradim
