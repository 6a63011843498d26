#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <utility>
#include <vector>

#include "randpick/color.hpp"

namespace randpick {

using Edge = std::pair<NodeId, NodeId>;

// Immutable digraph in CSR form. Undirected graphs are stored bidirected.
// Adjacency lists are sorted and deduplicated; self-loops are dropped at
// build time. The reverse adjacency is built on first use and memoized
// behind a synchronized guard, so const Graphs are safe to share across
// threads. Move-only: simulations hold references, nothing needs copies.
class Graph {
public:
    Graph() = default;
    Graph(Graph&&) noexcept = default;
    Graph& operator=(Graph&&) noexcept = default;
    Graph(const Graph&) = delete;
    Graph& operator=(const Graph&) = delete;

    std::uint32_t n() const { return n_; }
    // Logical edge count: each undirected edge counts once.
    std::uint64_t m() const {
        return undirected_ ? out_targets_.size() / 2 : out_targets_.size();
    }
    // Stored arcs; twice m() when undirected.
    std::uint64_t num_arcs() const { return out_targets_.size(); }
    bool undirected() const { return undirected_; }

    std::uint32_t out_degree(NodeId v) const {
        return std::uint32_t(out_offsets_[v + 1] - out_offsets_[v]);
    }
    std::span<const NodeId> out_neighbors(NodeId v) const {
        return {out_targets_.data() + out_offsets_[v], out_degree(v)};
    }

    std::uint32_t in_degree(NodeId v) const;
    std::span<const NodeId> in_neighbors(NodeId v) const;

    std::uint32_t max_out_degree() const { return max_out_degree_; }

    // Sorted adjacency makes membership a binary search.
    bool has_edge(NodeId u, NodeId v) const;

    // Canonical arc list: (u, v) per stored arc for digraphs, one (u, v)
    // with u < v per edge for undirected graphs.
    std::vector<Edge> edges() const;

    // Longest shortest-path distance over ordered pairs at finite distance;
    // cached after the first call. 0 when no pair is connected.
    std::uint32_t diameter() const;

    const std::uint64_t* out_offsets_data() const { return out_offsets_.data(); }
    const NodeId* out_targets_data() const { return out_targets_.data(); }

    friend Graph build_graph(std::uint32_t n, std::span<const Edge> edges, bool undirected);

private:
    void ensure_reverse() const;

    std::uint32_t n_ = 0;
    bool undirected_ = false;
    std::uint32_t max_out_degree_ = 0;
    std::vector<std::uint64_t> out_offsets_{0};
    std::vector<NodeId> out_targets_;

    struct Reverse {
        std::vector<std::uint64_t> offsets;
        std::vector<NodeId> targets;
    };
    // Synchronization lives behind a pointer so Graph stays movable.
    struct Lazy {
        std::mutex mutex;
        std::atomic<const Reverse*> reverse{nullptr};
        std::unique_ptr<Reverse> storage;
        std::atomic<std::int64_t> diameter{-1};
    };
    std::unique_ptr<Lazy> lazy_ = std::make_unique<Lazy>();
};

// Validates ids, drops self-loops, collapses parallel edges, mirrors edges
// when undirected. Throws std::invalid_argument on n == 0 or an endpoint
// out of range.
Graph build_graph(std::uint32_t n, std::span<const Edge> edges, bool undirected);

// BFS distances following out-edges; -1 for unreachable nodes.
std::vector<std::int32_t> distances_from(const Graph& g, NodeId source);

// |{u : dist(v, u) <= s}| including v itself.
std::uint64_t s_out_neighborhood_size(const Graph& g, NodeId v, std::uint32_t s);

// Uncolored nodes with a directed path to some colored node, sorted.
// Exactly these nodes can ever be colored in a run from `state`.
std::vector<NodeId> eventually_colorable(const Graph& g, const ColorState& state);

}  // namespace randpick
