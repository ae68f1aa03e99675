#pragma once

#include "bagen/generator.hpp"
#include "bagen/hashing.hpp"
#include "bagen/types.hpp"

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

namespace bagen {

// Explicit edge array; positions 2i and 2i+1 hold edge i's endpoints.
struct EdgeArray {
    EdgeIndex m0 = 0;
    std::vector<NodeId> E;

    EdgeIndex m() const noexcept { return E.size() / 2; }
    Edge edge(EdgeIndex i) const noexcept { return {E[2 * i], E[2 * i + 1]}; }

    // Generated edges only (indices m0..m-1).
    std::vector<Edge> generated_edges() const {
        std::vector<Edge> out;
        out.reserve(m() - m0);
        for (EdgeIndex i = m0; i < m(); ++i) out.push_back(edge(i));
        return out;
    }
};

// Sample positions with the configured hash: reproduces the parallel generator.
struct Derandomized {};

// Sample positions from mt19937_64(seed), reducing each 64-bit draw u to
// (u * bound) >> 64. For distribution-level comparisons only.
struct SeededRng {
    std::uint64_t seed = 0;
};

using OracleMode = std::variant<Derandomized, SeededRng>;

inline constexpr EdgeIndex kDefaultOracleCap = 100'000'000;

/*
 * Sequential generation over an explicit edge array. Nodes
 * are visited in order; each edge copies E[x] for x drawn below 2i+1 (or
 * below the node's first half-position when self-loops are excluded).
 * Parallel-edge rejection has no sequential reference and is refused.
 */
inline EdgeArray bb_generate(const GenParams& p, const OracleMode& mode, EdgeIndex max_edges = kDefaultOracleCap) {
    validate(p);
    if (p.no_parallel_edges) throw ParameterError("oracle does not support parallel-edge rejection");
    const EdgeIndex m = edge_count(p);
    if (m > max_edges)
        throw ParameterError("oracle edge array too large: " + std::to_string(m) + " edges (cap "
                             + std::to_string(max_edges) + ")");

    EdgeArray arr;
    arr.m0 = p.m0();
    arr.E.resize(2 * m);
    std::copy(p.seed_edges.begin(), p.seed_edges.end(), arr.E.begin());

    const bool derandomized = std::holds_alternative<Derandomized>(mode);
    std::mt19937_64 rng(derandomized ? 0 : std::get<SeededRng>(mode).seed);

    auto fill = [&](const auto& hash) {
        EdgeIndex i = p.m0();
        for (NodeId v = p.n0; v < p.n; ++v) {
            const std::uint64_t dv  = p.degrees ? (*p.degrees)[v - p.n0] : p.d;
            const HalfPos first_pos = 2 * i;
            for (std::uint64_t k = 0; k < dv; ++k, ++i) {
                const HalfPos bound = p.no_self_loops ? first_pos : 2 * i + 1;
                HalfPos x;
                if (derandomized) {
                    x = hash(2 * i + 1, bound);
                } else {
                    x = static_cast<HalfPos>((static_cast<unsigned __int128>(rng()) * bound) >> 64);
                }
                arr.E[2 * i]     = v;
                arr.E[2 * i + 1] = arr.E[x];
            }
        }
    };
    with_hash(p.hash, fill);
    return arr;
}

} // namespace bagen
