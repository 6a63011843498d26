#include "randpick/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace randpick {

Graph build_graph(std::uint32_t n, std::span<const Edge> edges, bool undirected) {
    if (n == 0) throw std::invalid_argument("graph needs at least one node");
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n)
            throw std::invalid_argument("edge endpoint " + std::to_string(std::max(u, v)) +
                                        " out of range for n=" + std::to_string(n));
    }

    std::vector<Edge> arcs;
    arcs.reserve(edges.size() * (undirected ? 2 : 1));
    for (const auto& [u, v] : edges) {
        if (u == v) continue;
        arcs.emplace_back(u, v);
        if (undirected) arcs.emplace_back(v, u);
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

    Graph g;
    g.n_ = n;
    g.undirected_ = undirected;
    g.out_offsets_.assign(n + 1, 0);
    for (const auto& [u, v] : arcs) g.out_offsets_[u + 1]++;
    for (std::uint32_t v = 0; v < n; ++v) g.out_offsets_[v + 1] += g.out_offsets_[v];
    g.out_targets_.resize(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i) g.out_targets_[i] = arcs[i].second;
    for (std::uint32_t v = 0; v < n; ++v)
        g.max_out_degree_ = std::max(g.max_out_degree_, g.out_degree(v));
    return g;
}

void Graph::ensure_reverse() const {
    if (lazy_->reverse.load(std::memory_order_acquire)) return;
    std::lock_guard<std::mutex> lock(lazy_->mutex);
    if (lazy_->reverse.load(std::memory_order_relaxed)) return;
    auto rev = std::make_unique<Reverse>();
    rev->offsets.assign(n_ + 1, 0);
    for (NodeId t : out_targets_) rev->offsets[t + 1]++;
    for (std::uint32_t v = 0; v < n_; ++v) rev->offsets[v + 1] += rev->offsets[v];
    rev->targets.resize(out_targets_.size());
    std::vector<std::uint64_t> cursor(rev->offsets.begin(), rev->offsets.end() - 1);
    for (NodeId u = 0; u < n_; ++u)
        for (NodeId t : out_neighbors(u)) rev->targets[cursor[t]++] = u;
    // sources come out sorted per target because u ascends
    lazy_->storage = std::move(rev);
    lazy_->reverse.store(lazy_->storage.get(), std::memory_order_release);
}

std::uint32_t Graph::in_degree(NodeId v) const {
    ensure_reverse();
    const Reverse* r = lazy_->reverse.load(std::memory_order_acquire);
    return std::uint32_t(r->offsets[v + 1] - r->offsets[v]);
}

std::span<const NodeId> Graph::in_neighbors(NodeId v) const {
    ensure_reverse();
    const Reverse* r = lazy_->reverse.load(std::memory_order_acquire);
    return {r->targets.data() + r->offsets[v], std::size_t(r->offsets[v + 1] - r->offsets[v])};
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    auto nbrs = out_neighbors(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    for (NodeId u = 0; u < n_; ++u)
        for (NodeId v : out_neighbors(u))
            if (!undirected_ || u < v) out.emplace_back(u, v);
    return out;
}

std::uint32_t Graph::diameter() const {
    std::int64_t cached = lazy_->diameter.load(std::memory_order_acquire);
    if (cached >= 0) return std::uint32_t(cached);
    std::int32_t best = 0;
    for (NodeId s = 0; s < n_; ++s) {
        auto dist = distances_from(*this, s);
        for (std::int32_t d : dist) best = std::max(best, d);
    }
    // concurrent callers compute the same value, the store is idempotent
    lazy_->diameter.store(best, std::memory_order_release);
    return std::uint32_t(best);
}

std::vector<std::int32_t> distances_from(const Graph& g, NodeId source) {
    if (source >= g.n()) throw std::out_of_range("source out of range");
    std::vector<std::int32_t> dist(g.n(), -1);
    std::vector<NodeId> queue;
    queue.reserve(g.n());
    dist[source] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        NodeId u = queue[head];
        for (NodeId v : g.out_neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

std::uint64_t s_out_neighborhood_size(const Graph& g, NodeId v, std::uint32_t s) {
    auto dist = distances_from(g, v);
    std::uint64_t count = 0;
    for (std::int32_t d : dist)
        if (d >= 0 && std::uint32_t(d) <= s) ++count;
    return count;
}

std::vector<NodeId> eventually_colorable(const Graph& g, const ColorState& state) {
    if (state.n() != g.n()) throw std::invalid_argument("state size does not match graph");
    std::vector<char> seen(g.n(), 0);
    std::vector<NodeId> queue;
    for (NodeId v = 0; v < g.n(); ++v) {
        if (state.colored(v)) {
            seen[v] = 1;
            queue.push_back(v);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (NodeId u : g.in_neighbors(queue[head])) {
            if (!seen[u]) {
                seen[u] = 1;
                queue.push_back(u);
            }
        }
    }
    std::vector<NodeId> out;
    for (NodeId v = 0; v < g.n(); ++v)
        if (seen[v] && !state.colored(v)) out.push_back(v);
    return out;
}

}  // namespace randpick
