#pragma once

#include "bagen/degreeseq.hpp"
#include "bagen/hashing.hpp"
#include "bagen/types.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

namespace bagen {

/*
 * Full definition of a graph family. Nodes 0..n0-1 form the seed graph whose
 * m0 edges occupy E[0..2m0-1]; every node v >= n0 then attaches either d
 * edges (uniform mode) or degrees[v-n0] edges (degree-sequence mode).
 */
struct GenParams {
    NodeId n = 0;
    std::uint64_t d = 0;
    std::optional<DegreeSequence> degrees;
    NodeId n0 = 0;
    std::vector<NodeId> seed_edges; // flat, 2*m0 entries
    bool no_self_loops     = false;
    bool no_parallel_edges = false;
    HashConfig hash;
    std::uint64_t max_attempts = 0; // 0 selects 64 * (max degree)

    EdgeIndex m0() const noexcept { return seed_edges.size() / 2; }
    bool node_granular() const noexcept { return no_self_loops || no_parallel_edges; }
};

namespace detail {

inline EdgeIndex checked_edge_count(const GenParams& p) {
    EdgeIndex m = p.m0();
    if (p.degrees) {
        for (std::uint64_t dv : *p.degrees)
            if (__builtin_add_overflow(m, dv, &m)) throw ParameterError("edge count overflows 64 bits");
    } else {
        EdgeIndex gen = 0;
        if (__builtin_mul_overflow(p.n - p.n0, p.d, &gen) || __builtin_add_overflow(m, gen, &m))
            throw ParameterError("edge count overflows 64 bits");
    }
    // Half-positions 2m-1 must be representable.
    if (m > (EdgeIndex{1} << 62)) throw ParameterError("edge count exceeds 2^62");
    return m;
}

} // namespace detail

// Checks every parameter invariant; throws ParameterError on the first violation.
inline void validate(const GenParams& p) {
    if (p.seed_edges.size() % 2 != 0) throw ParameterError("seed graph must list endpoint pairs");
    for (NodeId u : p.seed_edges)
        if (u >= p.n0) throw ParameterError("seed edge endpoint " + std::to_string(u) + " >= n0");
    if (p.degrees) {
        if (p.d != 0) throw ParameterError("uniform degree and degree sequence are mutually exclusive");
        if (p.n != p.n0 + p.degrees->size())
            throw ParameterError("node count must equal n0 + length of the degree sequence");
    } else {
        if (p.d == 0) throw ParameterError("degree must be >= 1");
        if (p.n < p.n0) throw ParameterError("node count is smaller than the seed graph");
    }
    if (p.node_granular() && p.m0() == 0)
        throw ParameterError("self-loop or parallel-edge avoidance requires a non-empty seed graph");
    detail::checked_edge_count(p);
}

inline EdgeIndex edge_count(const GenParams& p) {
    if (!p.degrees && p.n < p.n0) throw ParameterError("node count is smaller than the seed graph");
    return detail::checked_edge_count(p);
}

// Outcome of one hash chain: a seed-graph position or an even half-position.
struct ChainResult {
    enum class Kind { HalfPos, SeedPos };
    Kind kind        = Kind::HalfPos;
    HalfPos position = 0;
    std::uint64_t probes = 0;

    bool in_seed() const noexcept { return kind == Kind::SeedPos; }
    friend bool operator==(const ChainResult&, const ChainResult&) = default;
};

struct IdentityBound {
    HalfPos operator()(HalfPos r) const noexcept { return r; }
};

/*
 * Iterates r := hash(r, bound(r)) at least once, stopping when r falls into
 * the seed region (r < stop_below) or on an even r. Every stepped r is
 * either the odd start or an odd position >= stop_below, so the bound is
 * never 0 for a well-formed start.
 */
template <typename Hash, typename Bound = IdentityBound>
ChainResult resolve_chain(HalfPos r, HalfPos stop_below, const Hash& hash, Bound bound = {}) {
    std::uint64_t probes = 0;
    for (;;) {
        r = hash(r, bound(r));
        ++probes;
        if (r < stop_below) return {ChainResult::Kind::SeedPos, r, probes};
        if (r % 2 == 0) return {ChainResult::Kind::HalfPos, r, probes};
    }
}

inline ChainResult resolve_chain(HalfPos r0, HalfPos stop_below, const HashConfig& cfg) {
    if (r0 == 0) throw ParameterError("chain start must be >= 1");
    return with_hash(cfg, [&](const auto& h) { return resolve_chain(r0, stop_below, h); });
}

// Closed-form ownership: node v >= n0 owns edges [m0 + (v-n0)d, m0 + (v-n0+1)d).
class UniformLayout {
public:
    UniformLayout(NodeId n0, EdgeIndex m0, std::uint64_t d, NodeId n, EdgeIndex m)
        : n0_(n0), n_(n), m0_(m0), m_(m), d_(d) {}

    NodeId owner(EdgeIndex e) const noexcept { return (e - m0_) / d_ + n0_; }
    EdgeIndex first_edge(NodeId v) const noexcept { return m0_ + (v - n0_) * d_; }
    std::uint64_t degree(NodeId) const noexcept { return d_; }
    std::uint64_t max_degree() const noexcept { return d_; }

    NodeId n0() const noexcept { return n0_; }
    NodeId n() const noexcept { return n_; }
    EdgeIndex m0() const noexcept { return m0_; }
    EdgeIndex m() const noexcept { return m_; }

private:
    NodeId n0_, n_;
    EdgeIndex m0_, m_;
    std::uint64_t d_;
};

// Ownership through the rank bit vector of an individual degree sequence.
class SequenceLayout {
public:
    explicit SequenceLayout(std::shared_ptr<const DegreeIndex> index) : index_(std::move(index)) {
        for (std::size_t k = 0; k < index_->node_count(); ++k)
            max_degree_ = std::max(max_degree_, index_->prefix().degree(k));
    }

    NodeId owner(EdgeIndex e) const noexcept { return index_->owner(e); }
    EdgeIndex first_edge(NodeId v) const noexcept { return index_->first_edge(v); }
    std::uint64_t degree(NodeId v) const noexcept { return index_->degree(v); }
    std::uint64_t max_degree() const noexcept { return max_degree_; }

    NodeId n0() const noexcept { return index_->n0(); }
    NodeId n() const noexcept { return index_->n0() + index_->node_count(); }
    EdgeIndex m0() const noexcept { return index_->m0(); }
    EdgeIndex m() const noexcept { return index_->m(); }

    const DegreeIndex& index() const noexcept { return *index_; }

private:
    std::shared_ptr<const DegreeIndex> index_;
    std::uint64_t max_degree_ = 0;
};

/*
 * Edge computation for one concrete (layout, hash) combination.
 *
 * Plain mode: the chain for edge i starts at 2i+1 and every step samples
 * uniformly below the current position.
 *
 * No-self-loop mode: a step from an odd position q (edge j = q/2, owned by
 * node w) samples below w's first half-position instead of below q. The
 * first step therefore never reaches the current node's own edges, and a
 * chain through q reproduces the value that q received when it was
 * generated.
 */
template <typename Layout, typename Hash>
class EdgeKernel {
public:
    EdgeKernel(const Layout& layout, std::span<const NodeId> seed_edges, const GenParams& p, Hash hash)
        : layout_(&layout), seed_(seed_edges), cfg_(p.hash), hash_(hash),
          stop_below_(2 * layout.m0()), no_self_loops_(p.no_self_loops),
          no_parallel_edges_(p.no_parallel_edges),
          max_attempts_(p.max_attempts ? p.max_attempts : 64 * std::max<std::uint64_t>(layout.max_degree(), 1)) {}

    const Layout& layout() const noexcept { return *layout_; }

    template <typename H>
    ChainResult chain(EdgeIndex i, const H& h) const {
        if (no_self_loops_) {
            const Layout& l = *layout_;
            return resolve_chain(2 * i + 1, stop_below_, h,
                                 [&l](HalfPos r) { return 2 * l.first_edge(l.owner(r / 2)); });
        }
        return resolve_chain(2 * i + 1, stop_below_, h);
    }

    ChainResult chain(EdgeIndex i) const { return chain(i, hash_); }

    NodeId target_of(const ChainResult& c) const noexcept {
        return c.in_seed() ? seed_[c.position] : layout_->owner(c.position / 2);
    }

    // Single edge; not valid in no-parallel-edge mode.
    Edge edge(EdgeIndex i, std::uint64_t& probes) const {
        const ChainResult c = chain(i);
        probes += c.probes;
        return {layout_->owner(i), target_of(c)};
    }

    // Emits emit(i, Edge) for each of v's edges in index order.
    template <typename Emit>
    void node_edges(NodeId v, Emit&& emit, std::uint64_t& probes) const {
        const EdgeIndex lo = layout_->first_edge(v);
        const EdgeIndex hi = lo + layout_->degree(v);
        if (!no_parallel_edges_) {
            for (EdgeIndex i = lo; i < hi; ++i) {
                const ChainResult c = chain(i);
                probes += c.probes;
                emit(i, Edge{v, target_of(c)});
            }
            return;
        }
        TargetSet seen(hi - lo);
        for (EdgeIndex i = lo; i < hi; ++i) {
            NodeId t        = 0;
            bool accepted   = false;
            for (std::uint64_t a = 0; a < max_attempts_ && !accepted; ++a) {
                const ChainResult c = a == 0 ? chain(i) : chain(i, Hash(cfg_.salted(a)));
                probes += c.probes;
                t        = target_of(c);
                accepted = seen.insert(t);
            }
            if (!accepted)
                throw InfeasibleError("node " + std::to_string(v) + ": no distinct target for edge "
                                      + std::to_string(i) + " after " + std::to_string(max_attempts_)
                                      + " attempts");
            emit(i, Edge{v, t});
        }
    }

private:
    // Targets already used by the current node.
    class TargetSet {
    public:
        explicit TargetSet(std::uint64_t expected) {
            if (expected > kLinearLimit) big_.reserve(expected);
            else small_.reserve(expected);
            linear_ = expected <= kLinearLimit;
        }
        bool insert(NodeId t) {
            if (!linear_) return big_.insert(t).second;
            if (std::find(small_.begin(), small_.end(), t) != small_.end()) return false;
            small_.push_back(t);
            return true;
        }

    private:
        static constexpr std::uint64_t kLinearLimit = 64;
        bool linear_ = true;
        std::vector<NodeId> small_;
        std::unordered_set<NodeId> big_;
    };

    const Layout* layout_;
    std::span<const NodeId> seed_;
    HashConfig cfg_;
    Hash hash_;
    HalfPos stop_below_;
    bool no_self_loops_;
    bool no_parallel_edges_;
    std::uint64_t max_attempts_;
};

/*
 * Validated, immutable graph family. Cheap to share between worker threads.
 * visit() hands the caller an EdgeKernel specialised for the configured
 * layout and hash so per-edge work avoids dynamic dispatch.
 */
class Generator {
public:
    explicit Generator(GenParams p) : params_(std::move(p)) {
        validate(params_);
        const EdgeIndex m = detail::checked_edge_count(params_);
        if (params_.degrees) {
            layout_ = SequenceLayout(
                std::make_shared<const DegreeIndex>(*params_.degrees, params_.m0(), params_.n0));
        } else {
            layout_ = UniformLayout(params_.n0, params_.m0(), params_.d, params_.n, m);
        }
    }

    const GenParams& params() const noexcept { return params_; }
    NodeId n() const noexcept { return params_.n; }
    NodeId n0() const noexcept { return params_.n0; }
    EdgeIndex m0() const noexcept { return params_.m0(); }
    EdgeIndex m() const {
        return std::visit([](const auto& l) { return l.m(); }, layout_);
    }

    template <typename F>
    decltype(auto) visit(F&& f) const {
        return std::visit(
            [&](const auto& layout) -> decltype(auto) {
                return with_hash(params_.hash, [&](auto hash) -> decltype(auto) {
                    using L = std::decay_t<decltype(layout)>;
                    using H = decltype(hash);
                    return f(EdgeKernel<L, H>(layout, params_.seed_edges, params_, hash));
                });
            },
            layout_);
    }

    template <typename F>
    decltype(auto) visit_layout(F&& f) const {
        return std::visit(std::forward<F>(f), layout_);
    }

    NodeId owner(EdgeIndex e) const {
        return std::visit([e](const auto& l) { return l.owner(e); }, layout_);
    }
    EdgeIndex first_edge(NodeId v) const {
        return std::visit([v](const auto& l) { return l.first_edge(v); }, layout_);
    }
    std::uint64_t degree(NodeId v) const {
        return std::visit([v](const auto& l) { return l.degree(v); }, layout_);
    }

    // Null in uniform mode.
    const DegreeIndex* degree_index() const noexcept {
        const auto* s = std::get_if<SequenceLayout>(&layout_);
        return s ? &s->index() : nullptr;
    }

    ChainResult chain(EdgeIndex i) const {
        check_edge(i);
        return visit([i](const auto& k) { return k.chain(i); });
    }

    Edge edge(EdgeIndex i) const {
        check_edge(i);
        if (params_.no_parallel_edges)
            throw ParameterError("single-edge generation is undefined with parallel-edge rejection");
        std::uint64_t probes = 0;
        return visit([&](const auto& k) { return k.edge(i, probes); });
    }

    std::vector<Edge> node_edges(NodeId v) const {
        if (v < params_.n0 || v >= params_.n) throw ParameterError("node outside the generated range");
        std::vector<Edge> out;
        std::uint64_t probes = 0;
        visit([&](const auto& k) { k.node_edges(v, [&](EdgeIndex, Edge e) { out.push_back(e); }, probes); });
        return out;
    }

private:
    void check_edge(EdgeIndex i) const {
        if (i < m0() || i >= m())
            throw ParameterError("edge index " + std::to_string(i) + " outside [m0, m)");
    }

    GenParams params_;
    std::variant<UniformLayout, SequenceLayout> layout_{UniformLayout(0, 0, 1, 0, 0)};
};

// One-shot conveniences; build a Generator once for repeated calls.
inline Edge generate_edge(EdgeIndex i, const GenParams& p) { return Generator(p).edge(i); }

inline std::vector<Edge> generate_node_edges(NodeId v, const GenParams& p) { return Generator(p).node_edges(v); }

} // namespace bagen
