#pragma once

#include <cstdint>
#include <vector>

#include "randpick/graph.hpp"

namespace randpick {

// Fixed benchmark families with their canonical initial states.
//
// Star: undirected star, center 0, leaves 1..n-1; floor(n/2)-1 seed-chosen
//   leaves start blue.
// BipartiteTightness: V1 = {0..n/2-1}, V2 = {n/2..n-2}, hub v = n-1; every
//   u in V1 has arcs to all of V2 and to v; v starts red. Diameter 1, yet
//   convergence needs ~ (n/2) ln(n/2) rounds: each V1 node must pick v among
//   n/2 targets.
// PathBackedges: arcs i -> i+1 plus i -> j for every j < i; all uncolored.
// MTightness: path w_0 <- w_1 <- ... <- w_{n/2} (ids 0..n/2) where every w_i
//   also points to all of W' = {n/2+1..n-1}; W' nodes are sinks and stay
//   uncolored; w_0 starts red. Expected convergence time is about m rounds.
enum class ConstructionKind { Star, BipartiteTightness, PathBackedges, MTightness };

struct Construction {
    Graph graph;
    ColorState state;
};

// n constraints: Star needs n >= 3, PathBackedges n >= 2, the even-split
// kinds even n >= 4. Only Star uses the seed.
Construction generate_construction(ConstructionKind kind, std::uint32_t n, std::uint64_t seed);

// Preferential attachment: start with m_attach isolated nodes; each new node
// attaches to m_attach distinct existing nodes sampled proportionally to
// degree (the first new node links to all initial nodes). Undirected,
// connected, exactly (n - m_attach) * m_attach edges.
Graph generate_ba(std::uint32_t n, std::uint32_t m_attach, std::uint64_t seed);

struct CoverageInstance {
    Graph graph;
    std::uint32_t budget;
    std::uint32_t num_subsets;    // subset node j has id j
    std::uint32_t num_elements;   // element i has id num_subsets + i
    std::uint32_t leaves_per_element;  // ceil(1/eps) - 1, ids appended per element
};

// Maximum-coverage gadget: arc (o_i, s_j) iff element i belongs to subset j,
// plus ceil(1/eps)-1 leaves pointing into each o_i. All nodes uncolored;
// seeding q subset nodes eventually colors ceil(1/eps) * covered(q) extra
// nodes, nothing else.
CoverageInstance max_coverage_transform(const std::vector<std::vector<std::uint32_t>>& subsets,
                                        std::uint32_t num_elements, std::uint32_t k, double eps);

}  // namespace randpick
