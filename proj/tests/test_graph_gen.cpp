#include <algorithm>
#include <set>
#include <vector>

#include <doctest.h>

#include "randpick/errors.hpp"
#include "randpick/exact.hpp"
#include "randpick/graph.hpp"
#include "randpick/graph_gen.hpp"

using namespace randpick;

TEST_SUITE("graph_gen") {

TEST_CASE("star layout and blue seeding") {
    auto c = generate_construction(ConstructionKind::Star, 7, 5);
    CHECK(c.graph.n() == 7);
    CHECK(c.graph.m() == 6);
    CHECK(c.graph.undirected());
    CHECK(c.graph.out_degree(0) == 6);
    for (NodeId leaf = 1; leaf < 7; ++leaf) CHECK(c.graph.out_degree(leaf) == 1);
    CHECK(c.state.blue_count() == 2);  // floor(7/2) - 1
    CHECK(c.state.red_count() == 0);
    CHECK(c.state.color(0) == Color::Uncolored);  // blues land on leaves
    CHECK(generate_construction(ConstructionKind::Star, 7, 5).state == c.state);
    CHECK(generate_construction(ConstructionKind::Star, 7, 6).state != c.state);
    CHECK_THROWS_AS(generate_construction(ConstructionKind::Star, 2, 0),
                    std::invalid_argument);
}

TEST_CASE("bipartite tightness layout") {
    auto c = generate_construction(ConstructionKind::BipartiteTightness, 8, 0);
    const Graph& g = c.graph;
    CHECK(g.n() == 8);
    CHECK(g.m() == 16);  // (n/2) targets for each of the n/2 sources
    CHECK_FALSE(g.undirected());
    for (NodeId u = 0; u < 4; ++u) {
        CHECK(g.out_degree(u) == 4);
        for (NodeId w = 4; w < 8; ++w) CHECK(g.has_edge(u, w));
    }
    for (NodeId w = 4; w < 8; ++w) CHECK(g.out_degree(w) == 0);
    CHECK(g.diameter() == 1);
    CHECK(c.state.color(7) == Color::Red);  // hub
    CHECK(c.state.red_count() == 1);
    CHECK_THROWS_AS(generate_construction(ConstructionKind::BipartiteTightness, 7, 0),
                    std::invalid_argument);
}

TEST_CASE("path with back-edges is deterministic and complete downward") {
    auto c = generate_construction(ConstructionKind::PathBackedges, 6, 0);
    const Graph& g = c.graph;
    for (NodeId i = 0; i < 6; ++i) {
        if (i + 1 < 6) CHECK(g.has_edge(i, i + 1));
        for (NodeId j = 0; j < i; ++j) CHECK(g.has_edge(i, j));
        CHECK(g.out_degree(i) == i + (i + 1 < 6 ? 1 : 0));
    }
    CHECK(c.state.uncolored_count() == 6);
}

TEST_CASE("m-tightness layout, arc count, chain degrees") {
    auto c8 = generate_construction(ConstructionKind::MTightness, 8, 0);
    CHECK(c8.graph.m() == 19);
    CHECK(c8.state.color(0) == Color::Red);
    std::uint64_t chain_degrees = 0;
    for (NodeId i = 1; i <= 4; ++i) chain_degrees += c8.graph.out_degree(i);
    CHECK(chain_degrees == 16);  // the expected chain traversal time
    for (NodeId w = 5; w < 8; ++w) CHECK(c8.graph.out_degree(w) == 0);

    auto c40 = generate_construction(ConstructionKind::MTightness, 40, 0);
    CHECK(c40.graph.m() == 419);
}

TEST_CASE("preferential attachment: size, connectivity, determinism") {
    Graph g = generate_ba(300, 3, 42);
    CHECK(g.n() == 300);
    CHECK(g.m() == 891);  // (n - m) * m
    CHECK(g.undirected());
    auto dist = distances_from(g, 0);
    for (int d : dist) CHECK(d >= 0);  // connected
    CHECK(g.max_out_degree() > 10);    // hubs emerge

    Graph h = generate_ba(300, 3, 42);
    CHECK(g.edges() == h.edges());
    Graph k = generate_ba(300, 3, 43);
    CHECK(g.edges() != k.edges());

    Graph tiny = generate_ba(4, 3, 1);
    CHECK(tiny.m() == 3);  // first newcomer links the initial isolated nodes
    CHECK_THROWS_AS(generate_ba(3, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_ba(3, 0, 1), std::invalid_argument);
}

TEST_CASE("preferential attachment favors high degree") {
    // With 2000 nodes the early hubs should clearly beat the median degree.
    Graph g = generate_ba(2000, 3, 9);
    CHECK(g.m() == 5991);
    std::vector<std::uint32_t> degs;
    for (NodeId v = 0; v < g.n(); ++v) degs.push_back(g.out_degree(v));
    std::sort(degs.begin(), degs.end());
    CHECK(degs.back() >= 10 * degs[degs.size() / 2]);
}

TEST_CASE("coverage gadget wiring") {
    // subsets: {0,1}, {1,2}, {2}; eps = 0.5 -> 1 leaf per element
    std::vector<std::vector<std::uint32_t>> subsets{{0, 1}, {1, 2}, {2}};
    auto inst = max_coverage_transform(subsets, 3, 2, 0.5);
    CHECK(inst.num_subsets == 3);
    CHECK(inst.num_elements == 3);
    CHECK(inst.leaves_per_element == 1);
    CHECK(inst.budget == 2);
    const Graph& g = inst.graph;
    CHECK(g.n() == 3 + 3 + 3);
    CHECK(g.has_edge(3, 0));  // element 0 -> subset 0
    CHECK(g.has_edge(4, 0));
    CHECK(g.has_edge(4, 1));
    CHECK(g.has_edge(5, 1));
    CHECK(g.has_edge(5, 2));
    CHECK_FALSE(g.has_edge(3, 1));
    for (std::uint32_t e = 0; e < 3; ++e) CHECK(g.has_edge(6 + e, 3 + e));  // leaves
    for (NodeId s = 0; s < 3; ++s) CHECK(g.out_degree(s) == 0);  // subsets are sinks
}

TEST_CASE("coverage gadget spread equals budget plus scaled coverage") {
    std::vector<std::vector<std::uint32_t>> subsets{{0, 1}, {1, 2}, {2}};
    for (double eps : {1.0, 0.5}) {
        auto inst = max_coverage_transform(subsets, 3, 2, eps);
        std::uint32_t c = inst.leaves_per_element + 1;
        ColorState blank(inst.graph.n());
        for (NodeId a = 0; a < 3; ++a)
            for (NodeId b = a + 1; b < 3; ++b) {
                std::vector<NodeId> seeds{a, b};
                std::set<std::uint32_t> covered;
                for (NodeId s : seeds)
                    for (std::uint32_t e : subsets[s]) covered.insert(e);
                double f = exact::exact_F(inst.graph, blank, seeds);
                CHECK(f == doctest::Approx(2.0 + double(c) * covered.size()).epsilon(1e-12));
            }
    }
}

TEST_CASE("coverage gadget validation") {
    std::vector<std::vector<std::uint32_t>> bad{{0}, {0}};
    CHECK_THROWS_AS(max_coverage_transform(bad, 2, 1, 0.5), std::invalid_argument);
    std::vector<std::vector<std::uint32_t>> ok{{0}};
    CHECK_THROWS_AS(max_coverage_transform(ok, 1, 2, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(max_coverage_transform(ok, 1, 1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(max_coverage_transform(ok, 1, 1, 1.5), std::invalid_argument);
}

}
