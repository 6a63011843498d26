#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "randpick/graph.hpp"

namespace randpick {

struct ScoreVector {
    std::string measure;
    std::vector<double> scores;
};

// Power iteration with uniform teleport and uniform redistribution of
// dangling mass; stops when the L1 change drops below tol. Throws
// std::runtime_error if max_iter rounds do not get there.
ScoreVector pagerank(const Graph& g, double damping = 0.85, double tol = 1e-10,
                     std::uint32_t max_iter = 100000);

// Component-scaled closeness: (|reach(v)|-1)^2 / ((n-1) * sum of distances
// to reached nodes), 0 for nodes reaching nothing. Ranks fairly when a
// directed graph has several reachability tiers.
ScoreVector closeness(const Graph& g, int workers = 1);

// Exact shortest-path betweenness (ordered source/target pairs), standard
// dependency accumulation over BFS DAGs. Sources are processed in fixed
// blocks whose partial sums are reduced in block order, so scores are
// bit-identical for any worker count.
ScoreVector betweenness(const Graph& g, int workers = 1);

enum class Direction { Out, In };

ScoreVector degree_scores(const Graph& g, Direction direction);

// Asynchronous label propagation in seeded random order until a fixed
// point; neighbor labels are counted over the union of in- and
// out-neighbors, ties go to the smaller label. If fewer than
// min_communities result, the largest community is split by re-running
// propagation inside it (fresh derived seed); communities that refuse to
// split shed their smallest node as a singleton. Returned labels are
// renumbered 0..C-1 by smallest member id.
std::vector<std::uint32_t> label_propagation_communities(const Graph& g, std::uint64_t seed,
                                                         std::uint32_t min_communities);

}  // namespace randpick
