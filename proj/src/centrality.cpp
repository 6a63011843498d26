#include "randpick/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "randpick/parallel.hpp"
#include "randpick/rng.hpp"

namespace randpick {

ScoreVector pagerank(const Graph& g, double damping, double tol, std::uint32_t max_iter) {
    if (!(damping > 0.0 && damping < 1.0))
        throw std::invalid_argument("damping must be in (0, 1)");
    const std::uint32_t n = g.n();
    std::vector<double> x(n, 1.0 / n), next(n);
    for (std::uint32_t iter = 0; iter < max_iter; ++iter) {
        double dangling = 0.0;
        for (NodeId v = 0; v < n; ++v)
            if (g.out_degree(v) == 0) dangling += x[v];
        double base = (1.0 - damping) / n + damping * dangling / n;
        std::fill(next.begin(), next.end(), base);
        for (NodeId u = 0; u < n; ++u) {
            auto nbrs = g.out_neighbors(u);
            if (nbrs.empty()) continue;
            double share = damping * x[u] / double(nbrs.size());
            for (NodeId v : nbrs) next[v] += share;
        }
        double change = 0.0;
        for (NodeId v = 0; v < n; ++v) change += std::abs(next[v] - x[v]);
        x.swap(next);
        if (change < tol) return {"pagerank", std::move(x)};
    }
    throw std::runtime_error("pagerank did not converge within " + std::to_string(max_iter) +
                             " iterations");
}

ScoreVector closeness(const Graph& g, int workers) {
    const std::uint32_t n = g.n();
    ScoreVector sv{"closeness", std::vector<double>(n, 0.0)};
    parallel_for(0, n, workers, [&](std::size_t v) {
        auto dist = distances_from(g, NodeId(v));
        std::uint64_t reached = 0, total = 0;
        for (std::int32_t d : dist)
            if (d > 0) {
                ++reached;
                total += std::uint64_t(d);
            }
        if (reached > 0)
            sv.scores[v] = double(reached) * double(reached) / (double(n - 1) * double(total));
    });
    return sv;
}

namespace {

// One source's dependency accumulation added into acc.
void brandes_source(const Graph& g, NodeId s, std::vector<double>& acc,
                    std::vector<std::int32_t>& dist, std::vector<double>& sigma,
                    std::vector<double>& delta, std::vector<NodeId>& order) {
    const std::uint32_t n = g.n();
    dist.assign(n, -1);
    sigma.assign(n, 0.0);
    delta.assign(n, 0.0);
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
        NodeId u = order[head];
        for (NodeId v : g.out_neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                order.push_back(v);
            }
            if (dist[v] == dist[u] + 1) sigma[v] += sigma[u];
        }
    }
    for (std::size_t i = order.size(); i-- > 1;) {
        NodeId w = order[i];
        for (NodeId v : g.in_neighbors(w))
            if (dist[v] >= 0 && dist[v] + 1 == dist[w])
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        acc[w] += delta[w];
    }
}

}  // namespace

ScoreVector betweenness(const Graph& g, int workers) {
    const std::uint32_t n = g.n();
    g.in_neighbors(0);  // build reverse adjacency before threads fan out
    constexpr std::uint32_t kBlock = 64;
    const std::uint32_t blocks = (n + kBlock - 1) / kBlock;
    std::vector<std::vector<double>> partial(blocks);
    parallel_for(0, blocks, workers, [&](std::size_t b) {
        std::vector<double> acc(n, 0.0);
        std::vector<std::int32_t> dist;
        std::vector<double> sigma, delta;
        std::vector<NodeId> order;
        NodeId lo = NodeId(b * kBlock), hi = std::min<NodeId>(n, NodeId((b + 1) * kBlock));
        for (NodeId s = lo; s < hi; ++s) brandes_source(g, s, acc, dist, sigma, delta, order);
        partial[b] = std::move(acc);
    });
    ScoreVector sv{"betweenness", std::vector<double>(n, 0.0)};
    // fixed block order keeps the floating-point sum worker-independent
    for (std::uint32_t b = 0; b < blocks; ++b)
        for (NodeId v = 0; v < n; ++v) sv.scores[v] += partial[b][v];
    return sv;
}

ScoreVector degree_scores(const Graph& g, Direction direction) {
    ScoreVector sv{direction == Direction::Out ? "outdegree" : "indegree",
                   std::vector<double>(g.n(), 0.0)};
    for (NodeId v = 0; v < g.n(); ++v)
        sv.scores[v] =
            direction == Direction::Out ? double(g.out_degree(v)) : double(g.in_degree(v));
    return sv;
}

namespace {

// Async propagation sweeps until no label changes; returns raw labels.
std::vector<std::uint32_t> propagate(const Graph& g, std::uint64_t seed) {
    const std::uint32_t n = g.n();
    std::vector<std::uint32_t> labels(n);
    std::iota(labels.begin(), labels.end(), 0);
    std::vector<NodeId> sweep_order(n);
    std::iota(sweep_order.begin(), sweep_order.end(), 0);
    rng::SplitMix64 gen(rng::derive(seed, 0x1abe1));
    std::unordered_map<std::uint32_t, std::uint32_t> counts;
    constexpr std::uint32_t kMaxSweeps = 200;  // safety; propagation settles much earlier
    for (std::uint32_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
        rng::shuffle(sweep_order, gen);
        bool changed = false;
        for (NodeId v : sweep_order) {
            counts.clear();
            auto out = g.out_neighbors(v);
            auto in = g.in_neighbors(v);
            // count each distinct neighbor once (sorted-merge over the union)
            std::size_t i = 0, j = 0;
            auto visit = [&](NodeId u) { counts[labels[u]]++; };
            while (i < out.size() || j < in.size()) {
                if (j == in.size() || (i < out.size() && out[i] < in[j])) visit(out[i++]);
                else if (i == out.size() || in[j] < out[i]) visit(in[j++]);
                else {
                    visit(out[i++]);
                    ++j;
                }
            }
            if (counts.empty()) continue;
            std::uint32_t best_label = labels[v];
            std::uint32_t best_count = counts.count(best_label) ? counts[best_label] : 0;
            for (auto [label, count] : counts)
                if (count > best_count || (count == best_count && label < best_label)) {
                    best_label = label;
                    best_count = count;
                }
            if (best_label != labels[v]) {
                labels[v] = best_label;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return labels;
}

// Renumber labels to 0..C-1 ordered by each community's smallest member.
std::vector<std::uint32_t> canonicalize(const std::vector<std::uint32_t>& labels) {
    std::unordered_map<std::uint32_t, std::uint32_t> first_seen;
    std::vector<std::uint32_t> out(labels.size());
    for (std::size_t v = 0; v < labels.size(); ++v) {
        auto [it, inserted] = first_seen.emplace(labels[v], std::uint32_t(first_seen.size()));
        out[v] = it->second;
    }
    return out;
}

}  // namespace

std::vector<std::uint32_t> label_propagation_communities(const Graph& g, std::uint64_t seed,
                                                         std::uint32_t min_communities) {
    if (min_communities > g.n())
        throw std::invalid_argument("cannot produce more communities than nodes");
    std::vector<std::uint32_t> labels = canonicalize(propagate(g, seed));
    std::uint32_t next_label = *std::max_element(labels.begin(), labels.end()) + 1;
    for (std::uint64_t attempt = 0;; ++attempt) {
        std::unordered_map<std::uint32_t, std::vector<NodeId>> members;
        for (NodeId v = 0; v < g.n(); ++v) members[labels[v]].push_back(v);
        if (members.size() >= min_communities) break;
        // largest community, ties to the one with the smallest member
        std::uint32_t target = 0;
        std::size_t target_size = 0;
        NodeId target_min = 0;
        bool have_target = false;
        for (auto& [label, community] : members)
            if (!have_target || community.size() > target_size ||
                (community.size() == target_size && community[0] < target_min)) {
                target = label;
                target_size = community.size();
                target_min = community[0];
                have_target = true;
            }
        const std::vector<NodeId>& nodes = members.at(target);
        std::vector<NodeId> back(g.n());
        for (std::uint32_t i = 0; i < nodes.size(); ++i) back[nodes[i]] = i;
        std::vector<Edge> sub_edges;
        for (std::uint32_t i = 0; i < nodes.size(); ++i)
            for (NodeId w : g.out_neighbors(nodes[i]))
                if (labels[w] == target && (!g.undirected() || nodes[i] < w))
                    sub_edges.emplace_back(i, back[w]);
        Graph sub = build_graph(std::uint32_t(nodes.size()), sub_edges, g.undirected());
        std::vector<std::uint32_t> sub_labels =
            propagate(sub, rng::derive(seed, 0x5917, attempt));
        bool split = false;
        for (std::uint32_t l : sub_labels)
            if (l != sub_labels[0]) {
                split = true;
                break;
            }
        if (split) {
            std::unordered_map<std::uint32_t, std::uint32_t> remap;
            for (std::uint32_t i = 0; i < nodes.size(); ++i) {
                auto [it, inserted] = remap.emplace(sub_labels[i], next_label);
                if (inserted) ++next_label;
                labels[nodes[i]] = it->second;
            }
        } else {
            labels[nodes[0]] = next_label++;  // stalled: shed the smallest node
        }
    }
    return canonicalize(labels);
}

}  // namespace randpick
