#pragma once

#include "bagen/generator.hpp"
#include "bagen/types.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <concepts>
#include <cstdint>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace bagen {

enum class Granularity { Edge, Node };

// Half-open edge-index range handed to one worker at a time.
struct Batch {
    EdgeIndex lo = 0;
    EdgeIndex hi = 0;
    Granularity granularity = Granularity::Edge;

    friend bool operator==(const Batch&, const Batch&) = default;
};

inline constexpr std::uint64_t kDefaultBatchSize = std::uint64_t{1} << 16;

/*
 * Splits [m0, m) into consecutive batches of about batch_size edges. With
 * node granularity every boundary is a node start: the end of a batch is
 * the last node start <= lo + batch_size, or the next node start when a
 * single node is larger than batch_size. next_node_start(e) must return the
 * smallest node start > e (or m).
 */
inline std::vector<Batch> plan_batches(EdgeIndex m0, EdgeIndex m, std::uint64_t batch_size, Granularity g,
                                       const std::function<EdgeIndex(EdgeIndex)>& node_start_at_or_below,
                                       const std::function<EdgeIndex(EdgeIndex)>& next_node_start) {
    if (batch_size == 0) throw ParameterError("batch size must be >= 1");
    std::vector<Batch> out;
    EdgeIndex lo = m0;
    while (lo < m) {
        EdgeIndex hi = m - lo <= batch_size ? m : lo + batch_size;
        if (g == Granularity::Node && hi < m) {
            hi = node_start_at_or_below(hi);
            if (hi <= lo) hi = next_node_start(lo);
        }
        out.push_back({lo, hi, g});
        lo = hi;
    }
    return out;
}

inline std::vector<Batch> plan_batches(const Generator& gen, std::uint64_t batch_size) {
    const EdgeIndex m0 = gen.m0();
    const EdgeIndex m  = gen.m();
    const Granularity g = gen.params().node_granular() ? Granularity::Node : Granularity::Edge;
    if (const DegreeIndex* idx = gen.degree_index()) {
        const auto& starts = idx->prefix().first_edge;
        auto at_or_below = [&](EdgeIndex e) {
            auto it = std::upper_bound(starts.begin(), starts.end(), e);
            return it == starts.begin() ? m0 : *(it - 1);
        };
        auto next = [&](EdgeIndex e) {
            auto it = std::upper_bound(starts.begin(), starts.end(), e);
            return it == starts.end() ? m : *it;
        };
        return plan_batches(m0, m, batch_size, g, at_or_below, next);
    }
    const std::uint64_t d = gen.params().d;
    auto at_or_below = [&](EdgeIndex e) { return m0 + (e - m0) / d * d; };
    auto next        = [&](EdgeIndex e) { return std::min(m, m0 + ((e - m0) / d + 1) * d); };
    return plan_batches(m0, m, batch_size, g, at_or_below, next);
}

/*
 * A streaming consumer owns one private context per worker. accept() sees
 * every edge exactly once; merge() folds the contexts after all batches are
 * done and must not depend on which worker saw which batch.
 *
 * Optional hooks: begin_batch(ctx, Batch) / end_batch(ctx, Batch), and
 * single_worker_only() for consumers that rely on stream order.
 */
template <typename C>
concept EdgeConsumer = requires(const C& c, typename C::context_type& ctx, EdgeIndex i, Edge e,
                                std::vector<typename C::context_type>&& all) {
    { c.make_context() } -> std::same_as<typename C::context_type>;
    c.accept(ctx, i, e);
    c.merge(std::move(all));
};

struct WorkerStats {
    std::uint64_t edges   = 0;
    std::uint64_t probes  = 0;
    std::uint64_t batches = 0;
    double busy_seconds   = 0.0;
};

struct RunStats {
    std::uint64_t edges_emitted = 0;
    std::uint64_t hash_probes   = 0;
    double elapsed_seconds      = 0.0;
    std::vector<WorkerStats> per_worker;

    double probes_per_edge() const noexcept {
        return edges_emitted ? static_cast<double>(hash_probes) / static_cast<double>(edges_emitted) : 0.0;
    }
};

template <typename Result>
struct RunResult {
    Result result;
    RunStats stats;
};

// Failure inside a batch; the message names the batch.
class RunError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

template <typename C>
void begin_batch(const C& c, typename C::context_type& ctx, const Batch& b) {
    if constexpr (requires { c.begin_batch(ctx, b); }) c.begin_batch(ctx, b);
}

template <typename C>
void end_batch(const C& c, typename C::context_type& ctx, const Batch& b) {
    if constexpr (requires { c.end_batch(ctx, b); }) c.end_batch(ctx, b);
}

template <typename C>
bool single_worker_only(const C& c) {
    if constexpr (requires { c.single_worker_only(); }) return c.single_worker_only();
    return false;
}

inline std::string describe(const Batch& b) {
    return "batch [" + std::to_string(b.lo) + ", " + std::to_string(b.hi) + ")";
}

} // namespace detail

/*
 * Runs the generator over a precomputed batch plan. Batches are claimed
 * through a shared atomic cursor, so a worker stuck on an expensive batch
 * never holds back the rest.
 */
template <EdgeConsumer C>
auto run(const Generator& gen, const C& consumer, unsigned workers, const std::vector<Batch>& batches)
    -> RunResult<decltype(consumer.merge(std::vector<typename C::context_type>{}))> {
    using Context = typename C::context_type;
    if (workers == 0) throw ParameterError("worker count must be >= 1");
    if (workers > 1 && detail::single_worker_only(consumer))
        throw ParameterError("this output is defined for a single worker only");

    const auto start = std::chrono::steady_clock::now();
    std::vector<Context> contexts;
    contexts.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) contexts.push_back(consumer.make_context());
    std::vector<WorkerStats> stats(workers);

    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> abort{false};
    std::mutex error_mutex;
    std::exception_ptr error;
    Batch failed{};

    auto work = [&](unsigned w) {
        Context& ctx    = contexts[w];
        WorkerStats& ws = stats[w];
        const auto t0   = std::chrono::steady_clock::now();
        gen.visit([&](const auto& kernel) {
            for (;;) {
                if (abort.load(std::memory_order_relaxed)) return;
                const std::size_t k = cursor.fetch_add(1, std::memory_order_relaxed);
                if (k >= batches.size()) return;
                const Batch& b = batches[k];
                try {
                    detail::begin_batch(consumer, ctx, b);
                    if (b.granularity == Granularity::Edge) {
                        for (EdgeIndex i = b.lo; i < b.hi; ++i) consumer.accept(ctx, i, kernel.edge(i, ws.probes));
                    } else {
                        const auto& layout = kernel.layout();
                        for (NodeId v = layout.owner(b.lo); v < layout.n() && layout.first_edge(v) < b.hi; ++v)
                            kernel.node_edges(v, [&](EdgeIndex i, Edge e) { consumer.accept(ctx, i, e); }, ws.probes);
                    }
                    detail::end_batch(consumer, ctx, b);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) {
                        error  = std::current_exception();
                        failed = b;
                    }
                    abort = true;
                    return;
                }
                ws.edges += b.hi - b.lo;
                ++ws.batches;
            }
        });
        ws.busy_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }

    if (error) {
        try {
            std::rethrow_exception(error);
        } catch (const InfeasibleError& e) {
            throw InfeasibleError(detail::describe(failed) + ": " + e.what());
        } catch (const std::exception& e) {
            throw RunError(detail::describe(failed) + ": " + e.what());
        }
    }

    RunStats rs;
    for (const auto& ws : stats) {
        rs.edges_emitted += ws.edges;
        rs.hash_probes += ws.probes;
    }
    rs.per_worker = std::move(stats);
    auto result   = consumer.merge(std::move(contexts));
    rs.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {std::move(result), std::move(rs)};
}

template <EdgeConsumer C>
auto run(const Generator& gen, const C& consumer, unsigned workers, std::uint64_t batch_size = kDefaultBatchSize) {
    return run(gen, consumer, workers, plan_batches(gen, batch_size));
}

// Discards edges; measures generation alone.
struct DiscardConsumer {
    struct context_type {
        std::uint64_t checksum = 0;
    };
    context_type make_context() const { return {}; }
    void accept(context_type& ctx, EdgeIndex, Edge e) const { ctx.checksum += e.source ^ e.target; }
    std::uint64_t merge(std::vector<context_type>&& all) const {
        std::uint64_t s = 0;
        for (const auto& c : all) s += c.checksum;
        return s;
    }
};

// Materialises the generated edges, indexed by i - m0. Workers write
// disjoint slots of one shared vector.
class EdgeListConsumer {
public:
    struct context_type {
        std::vector<Edge>* out;
    };

    explicit EdgeListConsumer(const Generator& gen)
        : m0_(gen.m0()), edges_(std::make_shared<std::vector<Edge>>(gen.m() - gen.m0())) {}

    context_type make_context() const { return {edges_.get()}; }
    void accept(context_type& ctx, EdgeIndex i, Edge e) const { (*ctx.out)[i - m0_] = e; }
    std::vector<Edge> merge(std::vector<context_type>&&) const { return std::move(*edges_); }

private:
    EdgeIndex m0_;
    std::shared_ptr<std::vector<Edge>> edges_;
};

} // namespace bagen
