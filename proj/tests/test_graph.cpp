#include <algorithm>
#include <set>
#include <vector>

#include <doctest.h>

#include "randpick/graph.hpp"
#include "randpick/rng.hpp"

using namespace randpick;

namespace {

Graph random_graph(std::uint32_t n, double p, bool undirected, rng::SplitMix64& gen) {
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = 0; v < n; ++v)
            if (u != v && gen.uniform() < p) edges.emplace_back(u, v);
    return build_graph(n, edges, undirected);
}

// O(n^3) all-pairs oracle, deliberately unrelated to the BFS implementation.
std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
    const int inf = 1 << 28;
    std::uint32_t n = g.n();
    std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
    for (NodeId u = 0; u < n; ++u) {
        d[u][u] = 0;
        for (NodeId v : g.out_neighbors(u)) d[u][v] = 1;
    }
    for (NodeId k = 0; k < n; ++k)
        for (NodeId i = 0; i < n; ++i)
            for (NodeId j = 0; j < n; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("build_graph sorts, dedups, drops self-loops") {
    std::vector<Edge> edges{{2, 1}, {0, 1}, {0, 1}, {1, 1}, {0, 2}};
    Graph g = build_graph(3, edges, false);
    CHECK(g.n() == 3);
    CHECK(g.m() == 3);  // duplicate (0,1) collapsed, loop (1,1) dropped
    auto nb0 = g.out_neighbors(0);
    CHECK(std::vector<NodeId>(nb0.begin(), nb0.end()) == std::vector<NodeId>({1, 2}));
    CHECK(g.out_degree(1) == 0);
    CHECK(g.out_degree(2) == 1);
    CHECK(g.max_out_degree() == 2);
}

TEST_CASE("undirected graphs mirror every edge") {
    std::vector<Edge> edges{{0, 1}, {1, 2}};
    Graph g = build_graph(3, edges, true);
    CHECK(g.m() == 2);
    CHECK(g.num_arcs() == 4);
    CHECK(g.has_edge(1, 0));
    CHECK(g.has_edge(0, 1));
    CHECK(g.in_degree(1) == 2);
    auto es = g.edges();
    CHECK(es == std::vector<Edge>({{0, 1}, {1, 2}}));
}

TEST_CASE("build_graph rejects bad input") {
    std::vector<Edge> edges{{0, 3}};
    CHECK_THROWS_AS(build_graph(3, edges, false), std::invalid_argument);
    CHECK_THROWS_AS(build_graph(0, {}, false), std::invalid_argument);
}

TEST_CASE("has_edge and in_neighbors agree with the arc list") {
    rng::SplitMix64 gen(21);
    for (int rep = 0; rep < 20; ++rep) {
        bool undirected = rep % 2;
        Graph g = random_graph(9, 0.3, undirected, gen);
        std::set<std::pair<NodeId, NodeId>> arcs;
        for (NodeId u = 0; u < g.n(); ++u)
            for (NodeId v : g.out_neighbors(u)) arcs.insert({u, v});
        for (NodeId u = 0; u < g.n(); ++u)
            for (NodeId v = 0; v < g.n(); ++v)
                CHECK(g.has_edge(u, v) == (arcs.count({u, v}) > 0));
        for (NodeId v = 0; v < g.n(); ++v) {
            std::vector<NodeId> expect;
            for (auto [a, b] : arcs)
                if (b == v) expect.push_back(a);
            std::sort(expect.begin(), expect.end());
            auto got = g.in_neighbors(v);
            CHECK(std::vector<NodeId>(got.begin(), got.end()) == expect);
            CHECK(g.in_degree(v) == expect.size());
        }
    }
}

TEST_CASE("distances and diameter match Floyd-Warshall") {
    rng::SplitMix64 gen(33);
    for (int rep = 0; rep < 15; ++rep) {
        Graph g = random_graph(8, 0.25, rep % 2, gen);
        auto oracle = floyd_warshall(g);
        int best = 0;
        for (NodeId s = 0; s < g.n(); ++s) {
            auto dist = distances_from(g, s);
            for (NodeId t = 0; t < g.n(); ++t) {
                if (oracle[s][t] >= (1 << 28)) {
                    CHECK(dist[t] == -1);
                } else {
                    CHECK(dist[t] == oracle[s][t]);
                    best = std::max(best, oracle[s][t]);
                }
            }
        }
        CHECK(g.diameter() == std::uint32_t(best));
    }
}

TEST_CASE("diameter on fixed shapes") {
    std::vector<Edge> path{{0, 1}, {1, 2}, {2, 3}, {3, 4}};
    CHECK(build_graph(5, path, true).diameter() == 4);
    std::vector<Edge> cycle{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
    CHECK(build_graph(5, cycle, false).diameter() == 4);
    std::vector<Edge> star{{0, 1}, {0, 2}, {0, 3}};
    CHECK(build_graph(4, star, true).diameter() == 2);
    CHECK(build_graph(4, star, false).diameter() == 1);
}

TEST_CASE("s_out_neighborhood_size counts BFS balls") {
    rng::SplitMix64 gen(5);
    Graph g = random_graph(10, 0.2, false, gen);
    for (NodeId v = 0; v < g.n(); ++v) {
        auto dist = distances_from(g, v);
        for (std::uint32_t s = 0; s <= 3; ++s) {
            std::uint64_t expect = 0;
            for (int d : dist)
                if (d >= 0 && std::uint32_t(d) <= s) ++expect;
            CHECK(s_out_neighborhood_size(g, v, s) == expect);
        }
    }
}

TEST_CASE("eventually_colorable equals path-to-colored reachability") {
    rng::SplitMix64 gen(77);
    for (int rep = 0; rep < 30; ++rep) {
        Graph g = random_graph(8, 0.2, rep % 2, gen);
        ColorState state(g.n());
        for (NodeId v = 0; v < g.n(); ++v) {
            double r = gen.uniform();
            if (r < 0.15) state.set_color(v, Color::Red);
            else if (r < 0.3) state.set_color(v, Color::Blue);
        }
        std::vector<NodeId> expect;
        for (NodeId v = 0; v < g.n(); ++v) {
            if (state.colored(v)) continue;
            auto dist = distances_from(g, v);  // forward BFS from v
            bool reaches = false;
            for (NodeId w = 0; w < g.n(); ++w)
                if (dist[w] > 0 && state.colored(w)) reaches = true;
            if (reaches) expect.push_back(v);
        }
        CHECK(eventually_colorable(g, state) == expect);
    }
}

TEST_CASE("graphs are movable and stay usable") {
    std::vector<Edge> edges{{0, 1}, {1, 2}};
    Graph a = build_graph(3, edges, true);
    CHECK(a.diameter() == 2);
    Graph b = std::move(a);
    CHECK(b.diameter() == 2);
    CHECK(b.in_degree(1) == 2);
}

}
