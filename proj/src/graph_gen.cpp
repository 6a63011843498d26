#include "randpick/graph_gen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "randpick/rng.hpp"

namespace randpick {

namespace {

void require_even(std::uint32_t n, const char* kind) {
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument(std::string(kind) + " needs even n >= 4, got " +
                                    std::to_string(n));
}

}  // namespace

Construction generate_construction(ConstructionKind kind, std::uint32_t n, std::uint64_t seed) {
    std::vector<Edge> edges;
    switch (kind) {
        case ConstructionKind::Star: {
            if (n < 3) throw std::invalid_argument("star needs n >= 3");
            for (NodeId leaf = 1; leaf < n; ++leaf) edges.emplace_back(0, leaf);
            Construction c{build_graph(n, edges, true), ColorState(n)};
            std::uint32_t blues = n / 2 - 1;
            rng::SplitMix64 gen(rng::derive(seed, 0x5741));
            for (std::uint32_t leaf : rng::sample_without_replacement(n - 1, blues, gen))
                c.state.set_color(leaf + 1, Color::Blue);
            return c;
        }
        case ConstructionKind::BipartiteTightness: {
            require_even(n, "bipartite construction");
            NodeId half = n / 2, hub = n - 1;
            for (NodeId u = 0; u < half; ++u) {
                for (NodeId w = half; w < hub; ++w) edges.emplace_back(u, w);
                edges.emplace_back(u, hub);
            }
            Construction c{build_graph(n, edges, false), ColorState(n)};
            c.state.set_color(hub, Color::Red);
            return c;
        }
        case ConstructionKind::PathBackedges: {
            if (n < 2) throw std::invalid_argument("path construction needs n >= 2");
            for (NodeId i = 0; i < n; ++i) {
                if (i + 1 < n) edges.emplace_back(i, i + 1);
                for (NodeId j = 0; j < i; ++j) edges.emplace_back(i, j);
            }
            return {build_graph(n, edges, false), ColorState(n)};
        }
        case ConstructionKind::MTightness: {
            require_even(n, "m-tightness construction");
            NodeId path_end = n / 2;  // ids 0..n/2 on the path, rest are sinks
            for (NodeId i = 1; i <= path_end; ++i) edges.emplace_back(i, i - 1);
            for (NodeId i = 0; i <= path_end; ++i)
                for (NodeId w = path_end + 1; w < n; ++w) edges.emplace_back(i, w);
            Construction c{build_graph(n, edges, false), ColorState(n)};
            c.state.set_color(0, Color::Red);
            return c;
        }
    }
    throw std::invalid_argument("unknown construction kind");
}

Graph generate_ba(std::uint32_t n, std::uint32_t m_attach, std::uint64_t seed) {
    if (m_attach < 1 || m_attach >= n)
        throw std::invalid_argument("preferential attachment needs 1 <= m_attach < n");
    rng::SplitMix64 gen(rng::derive(seed, 0xBA));
    std::vector<Edge> edges;
    edges.reserve(std::size_t(n - m_attach) * m_attach);
    // One entry per edge endpoint: sampling an index uniformly is sampling
    // a node proportionally to its degree.
    std::vector<NodeId> repeated;
    repeated.reserve(2 * edges.capacity());
    std::vector<NodeId> targets(m_attach);
    for (NodeId t = 0; t < m_attach; ++t) targets[t] = t;
    for (NodeId source = m_attach; source < n; ++source) {
        for (NodeId t : targets) {
            edges.emplace_back(source, t);
            repeated.push_back(t);
            repeated.push_back(source);
        }
        if (source + 1 == n) break;
        // distinct degree-proportional targets via rejection
        targets.clear();
        while (targets.size() < m_attach) {
            NodeId x = repeated[gen.below(std::uint32_t(repeated.size()))];
            if (std::find(targets.begin(), targets.end(), x) == targets.end())
                targets.push_back(x);
        }
    }
    return build_graph(n, edges, true);
}

CoverageInstance max_coverage_transform(const std::vector<std::vector<std::uint32_t>>& subsets,
                                        std::uint32_t num_elements, std::uint32_t k, double eps) {
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must be in (0, 1]");
    if (k > subsets.size()) throw std::invalid_argument("budget exceeds number of subsets");
    std::uint32_t l = std::uint32_t(subsets.size());
    std::vector<char> covered(num_elements, 0);
    for (const auto& s : subsets)
        for (std::uint32_t e : s) {
            if (e >= num_elements) throw std::invalid_argument("element id out of range");
            covered[e] = 1;
        }
    for (std::uint32_t e = 0; e < num_elements; ++e)
        if (!covered[e])
            throw std::invalid_argument("element " + std::to_string(e) +
                                        " not covered by any subset");

    std::uint32_t leaves = std::uint32_t(std::ceil(1.0 / eps)) - 1;
    std::uint32_t n = l + num_elements + leaves * num_elements;
    std::vector<Edge> edges;
    for (std::uint32_t j = 0; j < l; ++j)
        for (std::uint32_t e : subsets[j]) edges.emplace_back(l + e, j);
    for (std::uint32_t e = 0; e < num_elements; ++e)
        for (std::uint32_t r = 0; r < leaves; ++r)
            edges.emplace_back(l + num_elements + std::uint64_t(e) * leaves + r, l + e);
    return {build_graph(n, edges, false), k, l, num_elements, leaves};
}

}  // namespace randpick
