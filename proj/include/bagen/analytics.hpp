#pragma once

#include "bagen/types.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace bagen {

// Degree tallies of nodes 0..K-1. A self-loop adds 2 to its node.
struct DegreeCounter {
    std::vector<std::uint64_t> counts;

    DegreeCounter() = default;
    explicit DegreeCounter(std::size_t k) : counts(k, 0) {}

    std::size_t k() const noexcept { return counts.size(); }

    void count_edge(const Edge& e) noexcept {
        if (e.source < counts.size()) ++counts[e.source];
        if (e.target < counts.size()) ++counts[e.target];
    }

    std::uint64_t total() const noexcept {
        std::uint64_t s = 0;
        for (auto c : counts) s += c;
        return s;
    }
};

inline DegreeCounter merge(DegreeCounter a, const DegreeCounter& b) {
    if (a.k() != b.k()) throw std::invalid_argument("merge: degree counters have different K");
    for (std::size_t v = 0; v < a.k(); ++v) a.counts[v] += b.counts[v];
    return a;
}

// Streaming consumer: one DegreeCounter per worker, summed at the end.
class DegreeCountConsumer {
public:
    using context_type = DegreeCounter;

    explicit DegreeCountConsumer(std::size_t k) : k_(k) {}

    context_type make_context() const { return DegreeCounter(k_); }
    void accept(context_type& ctx, EdgeIndex, const Edge& e) const { ctx.count_edge(e); }

    DegreeCounter merge(std::vector<context_type>&& all) const {
        DegreeCounter out(k_);
        for (const auto& c : all) out = bagen::merge(std::move(out), c);
        return out;
    }

private:
    std::size_t k_;
};

// degree value -> number of nodes with that degree
using Histogram = std::map<std::uint64_t, std::uint64_t>;

// Histogram over counts[first..]; pass first = n0 to skip seed nodes.
inline Histogram degree_histogram(const DegreeCounter& c, std::size_t first = 0) {
    Histogram h;
    for (std::size_t v = first; v < c.k(); ++v) ++h[c.counts[v]];
    return h;
}

inline constexpr std::uint64_t kMinFitSamples = 100;

/*
 * Discrete power-law MLE (continuous approximation with the half-integer
 * shift): gamma = 1 + N / sum ln(k / (xmin - 0.5)) over degrees k >= xmin.
 */
inline double fit_exponent(const Histogram& h, std::uint64_t xmin) {
    if (xmin < 1) throw std::domain_error("fit_exponent: xmin must be >= 1");
    std::uint64_t n = 0;
    double log_sum  = 0.0;
    bool spread     = false;
    const double base = static_cast<double>(xmin) - 0.5;
    for (auto it = h.lower_bound(xmin); it != h.end(); ++it) {
        const auto [k, count] = *it;
        if (count == 0) continue;
        n += count;
        log_sum += static_cast<double>(count) * std::log(static_cast<double>(k) / base);
        spread = spread || k != xmin;
    }
    if (n < kMinFitSamples)
        throw std::domain_error("fit_exponent: only " + std::to_string(n) + " nodes with degree >= xmin");
    if (!spread) throw std::domain_error("fit_exponent: every degree equals xmin, exponent unbounded");
    return 1.0 + static_cast<double>(n) / log_sum;
}

struct DegreeBin {
    std::uint64_t lo = 0; // node index range [lo, hi)
    std::uint64_t hi = 0;
    double center        = 0.0; // geometric mean of the range
    double mean_degree   = 0.0;
    double expected      = 0.0; // d * sqrt(n / center)
    double ratio         = 0.0;
};

/*
 * Log-binned mean degree of nodes [i_lo, i_hi) against the BA growth law
 * d * sqrt(n / i). Node 0 and empty bins are skipped; nodes beyond the
 * counter's K are ignored.
 */
inline std::vector<DegreeBin> expected_degree_check(const DegreeCounter& c, std::uint64_t n, std::uint64_t d,
                                                    std::uint64_t i_lo, std::uint64_t i_hi, unsigned bins) {
    std::vector<DegreeBin> out;
    i_lo = std::max<std::uint64_t>(i_lo, 1);
    i_hi = std::min<std::uint64_t>(i_hi, c.k());
    if (bins == 0 || i_lo >= i_hi) return out;
    const double step = std::log(static_cast<double>(i_hi) / static_cast<double>(i_lo)) / bins;
    std::uint64_t lo = i_lo;
    for (unsigned b = 1; b <= bins && lo < i_hi; ++b) {
        std::uint64_t hi = b == bins ? i_hi
                                     : static_cast<std::uint64_t>(std::llround(static_cast<double>(i_lo)
                                                                               * std::exp(step * b)));
        hi = std::min(std::max(hi, lo + 1), i_hi);
        DegreeBin bin;
        bin.lo = lo;
        bin.hi = hi;
        double sum = 0.0;
        for (std::uint64_t v = lo; v < hi; ++v) sum += static_cast<double>(c.counts[v]);
        bin.mean_degree = sum / static_cast<double>(hi - lo);
        bin.center      = std::sqrt(static_cast<double>(lo) * static_cast<double>(hi - 1));
        bin.expected    = static_cast<double>(d) * std::sqrt(static_cast<double>(n) / bin.center);
        bin.ratio       = bin.mean_degree / bin.expected;
        out.push_back(bin);
        lo = hi;
    }
    return out;
}

} // namespace bagen
