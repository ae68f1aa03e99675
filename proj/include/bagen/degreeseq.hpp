#pragma once

#include "bagen/types.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

namespace bagen {

// Out-degrees of the generated nodes n0, n0+1, ...; zero entries are allowed.
using DegreeSequence = std::vector<std::uint64_t>;

// first_edge[k] is the edge index of node n0+k's first edge.
struct PrefixIndex {
    NodeId n0    = 0;
    EdgeIndex m0 = 0;
    EdgeIndex m  = 0;
    std::vector<EdgeIndex> first_edge;

    std::size_t node_count() const noexcept { return first_edge.size(); }

    std::uint64_t degree(std::size_t k) const noexcept {
        return (k + 1 < first_edge.size() ? first_edge[k + 1] : m) - first_edge[k];
    }
};

inline PrefixIndex build_prefix(std::span<const std::uint64_t> degrees, EdgeIndex m0, NodeId n0) {
    PrefixIndex pi;
    pi.n0 = n0;
    pi.m0 = m0;
    pi.first_edge.reserve(degrees.size());
    EdgeIndex acc = m0;
    for (std::uint64_t d : degrees) {
        pi.first_edge.push_back(acc);
        if (__builtin_add_overflow(acc, d, &acc) || acc > (EdgeIndex{1} << 62))
            throw ParameterError("degree sequence: total edge count overflows");
    }
    pi.m = acc;
    return pi;
}

/*
 * Plain bit vector with a two-level rank directory: an absolute count per
 * 512-bit superblock and a 16-bit relative count per 64-bit word.
 * rank1(pos) counts ones in [0, pos] (inclusive).
 */
class RankBits {
public:
    static constexpr std::uint64_t kWordBits       = 64;
    static constexpr std::uint64_t kWordsPerSuper  = 8;

    RankBits() = default;

    explicit RankBits(std::uint64_t size)
        : size_(size), words_((size + kWordBits - 1) / kWordBits, 0) {}

    void set(std::uint64_t pos) noexcept { words_[pos / kWordBits] |= std::uint64_t{1} << (pos % kWordBits); }

    bool operator[](std::uint64_t pos) const noexcept {
        return (words_[pos / kWordBits] >> (pos % kWordBits)) & 1U;
    }

    // Must be called once after the last set().
    void build_directory() {
        supers_.assign(words_.size() / kWordsPerSuper + 1, 0);
        blocks_.assign(words_.size(), 0);
        std::uint64_t total = 0;
        std::uint16_t in_super = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            if (w % kWordsPerSuper == 0) {
                supers_[w / kWordsPerSuper] = total;
                in_super = 0;
            }
            blocks_[w] = in_super;
            const auto c = static_cast<std::uint16_t>(std::popcount(words_[w]));
            in_super = static_cast<std::uint16_t>(in_super + c);
            total += c;
        }
        ones_ = total;
    }

    std::uint64_t rank1(std::uint64_t pos) const noexcept {
        const std::uint64_t w   = pos / kWordBits;
        const unsigned shift    = static_cast<unsigned>(kWordBits - 1 - pos % kWordBits);
        return supers_[w / kWordsPerSuper] + blocks_[w] + std::popcount(words_[w] << shift);
    }

    std::uint64_t size() const noexcept { return size_; }
    std::uint64_t ones() const noexcept { return ones_; }

private:
    std::uint64_t size_ = 0;
    std::uint64_t ones_ = 0;
    std::vector<std::uint64_t> words_;
    std::vector<std::uint64_t> supers_;
    std::vector<std::uint16_t> blocks_;
};

// One bit at each first edge of a node with nonzero degree.
inline RankBits build_rank_bits(const PrefixIndex& pi) {
    RankBits rb(pi.m);
    for (std::size_t k = 0; k < pi.node_count(); ++k)
        if (pi.degree(k) > 0) rb.set(pi.first_edge[k]);
    rb.build_directory();
    return rb;
}

// Binary search over the prefix sums; the reference path for node_of_edge.
inline NodeId node_of_edge_bsearch(EdgeIndex e, const PrefixIndex& pi) {
    if (e < pi.m0 || e >= pi.m) throw ParameterError("edge index outside the generated range");
    const auto it = std::upper_bound(pi.first_edge.begin(), pi.first_edge.end(), e);
    return pi.n0 + static_cast<NodeId>(it - pi.first_edge.begin()) - 1;
}

inline HalfPos first_half_pos(NodeId v, const PrefixIndex& pi) {
    if (v < pi.n0 || v - pi.n0 >= pi.node_count()) throw ParameterError("node outside the generated range");
    if (pi.degree(v - pi.n0) == 0) throw ParameterError("node " + std::to_string(v) + " owns no edges");
    return 2 * pi.first_edge[v - pi.n0];
}

/*
 * Prefix sums plus the rank structure. Maps an edge index to its owning node
 * in constant time. Zero-degree nodes are skipped through an explicit
 * owner table; without them rank r maps to node n0 + r - 1 directly.
 */
class DegreeIndex {
public:
    DegreeIndex() = default;

    DegreeIndex(std::span<const std::uint64_t> degrees, EdgeIndex m0, NodeId n0)
        : prefix_(build_prefix(degrees, m0, n0)), bits_(build_rank_bits(prefix_)) {
        if (bits_.ones() != prefix_.node_count()) {
            owners_.reserve(bits_.ones());
            for (std::size_t k = 0; k < prefix_.node_count(); ++k)
                if (prefix_.degree(k) > 0) owners_.push_back(n0 + k);
        }
    }

    const PrefixIndex& prefix() const noexcept { return prefix_; }
    const RankBits& bits() const noexcept { return bits_; }

    EdgeIndex m0() const noexcept { return prefix_.m0; }
    EdgeIndex m() const noexcept { return prefix_.m; }
    NodeId n0() const noexcept { return prefix_.n0; }
    std::size_t node_count() const noexcept { return prefix_.node_count(); }

    // Caller guarantees m0 <= e < m.
    NodeId owner(EdgeIndex e) const noexcept {
        const std::uint64_t r = bits_.rank1(e);
        return owners_.empty() ? prefix_.n0 + r - 1 : owners_[r - 1];
    }

    EdgeIndex first_edge(NodeId v) const noexcept { return prefix_.first_edge[v - prefix_.n0]; }
    std::uint64_t degree(NodeId v) const noexcept { return prefix_.degree(v - prefix_.n0); }

private:
    PrefixIndex prefix_;
    RankBits bits_;
    std::vector<NodeId> owners_;
};

inline NodeId node_of_edge(EdgeIndex e, const DegreeIndex& idx) {
    if (e < idx.m0() || e >= idx.m()) throw ParameterError("edge index outside the generated range");
    return idx.owner(e);
}

// An edge index paired with the even half-position its chain resolved to.
struct ResolvedChain {
    EdgeIndex edge = 0;
    HalfPos half_pos = 0;
};

/*
 * Deferred node-ID computation: sort all queried edge indices (sources i and
 * targets r/2), sweep them once against the prefix sums, and emit the edges
 * in the input order.
 */
inline std::vector<Edge> resolve_targets_deferred(std::span<const ResolvedChain> chains, const PrefixIndex& pi) {
    std::vector<std::pair<EdgeIndex, std::size_t>> queries;
    queries.reserve(2 * chains.size());
    for (std::size_t k = 0; k < chains.size(); ++k) {
        const auto& c = chains[k];
        if (c.half_pos % 2 != 0) throw ParameterError("deferred resolution: odd half-position");
        if (c.edge < pi.m0 || c.edge >= pi.m || c.half_pos / 2 < pi.m0 || c.half_pos / 2 >= pi.m)
            throw ParameterError("deferred resolution: position outside the generated range");
        queries.emplace_back(c.edge, 2 * k);
        queries.emplace_back(c.half_pos / 2, 2 * k + 1);
    }
    std::sort(queries.begin(), queries.end());

    std::vector<NodeId> resolved(queries.size());
    std::size_t node = 0;
    for (const auto& [e, slot] : queries) {
        while (node + 1 < pi.first_edge.size() && pi.first_edge[node + 1] <= e) ++node;
        resolved[slot] = pi.n0 + node;
    }

    std::vector<Edge> out(chains.size());
    for (std::size_t k = 0; k < chains.size(); ++k) out[k] = {resolved[2 * k], resolved[2 * k + 1]};
    return out;
}

} // namespace bagen
