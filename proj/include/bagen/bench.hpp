#pragma once

#include "bagen/driver.hpp"
#include "bagen/generator.hpp"
#include "bagen/oracle.hpp"

#include <chrono>
#include <cstdint>
#include <ostream>

namespace bagen {

struct BenchReport {
    EdgeIndex edges           = 0;
    unsigned workers          = 1;
    double single_seconds     = 0.0;
    double multi_seconds      = 0.0;
    double probes_per_edge    = 0.0;
    EdgeIndex sequential_edges = 0;
    double bb_seconds         = 0.0; // explicit-array sequential generation
    double recompute_seconds  = 0.0; // single-worker hash-chain generation, same graph

    double single_throughput() const { return single_seconds > 0 ? edges / single_seconds : 0.0; }
    double multi_throughput() const { return multi_seconds > 0 ? edges / multi_seconds : 0.0; }
    double speedup() const { return multi_seconds > 0 ? single_seconds / multi_seconds : 0.0; }
    // > 1 means the sequential array algorithm is faster.
    double bb_advantage() const { return bb_seconds > 0 ? recompute_seconds / bb_seconds : 0.0; }
};

/*
 * Streaming-discard throughput at 1 and `workers` workers on `p`, plus a
 * single-core comparison against the sequential edge-array generator on
 * the same family truncated to `sequential_nodes` nodes.
 */
inline BenchReport run_bench(const GenParams& p, unsigned workers, NodeId sequential_nodes,
                             std::uint64_t batch_size = kDefaultBatchSize) {
    BenchReport r;
    Generator gen(p);
    r.edges   = gen.m() - gen.m0();
    r.workers = workers;

    const auto single = run(gen, DiscardConsumer{}, 1, batch_size);
    r.single_seconds  = single.stats.elapsed_seconds;
    r.probes_per_edge = single.stats.probes_per_edge();
    if (workers > 1) {
        r.multi_seconds = run(gen, DiscardConsumer{}, workers, batch_size).stats.elapsed_seconds;
    } else {
        r.multi_seconds = r.single_seconds;
    }

    GenParams small = p;
    if (!small.degrees) small.n = std::min(p.n, std::max(sequential_nodes, p.n0));
    small.no_parallel_edges = false;
    Generator small_gen(small);
    r.sequential_edges = small_gen.m() - small_gen.m0();

    const auto t0 = std::chrono::steady_clock::now();
    const EdgeArray arr = bb_generate(small, Derandomized{});
    r.bb_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    volatile NodeId sink = arr.E.empty() ? 0 : arr.E.back();
    (void)sink;
    r.recompute_seconds = run(small_gen, DiscardConsumer{}, 1, batch_size).stats.elapsed_seconds;
    return r;
}

inline void print_bench(std::ostream& os, const BenchReport& r) {
    os << "edges                      " << r.edges << '\n'
       << "single-worker throughput   " << r.single_throughput() << " edges/s\n"
       << "workers                    " << r.workers << '\n'
       << "multi-worker throughput    " << r.multi_throughput() << " edges/s\n"
       << "speedup                    " << r.speedup() << "x\n"
       << "hash probes per edge       " << r.probes_per_edge << '\n'
       << "sequential comparison      " << r.sequential_edges << " edges\n"
       << "  edge-array generator     " << r.bb_seconds << " s\n"
       << "  hash-chain recompute     " << r.recompute_seconds << " s\n"
       << "  recompute / edge-array   " << r.bb_advantage() << '\n';
}

} // namespace bagen
