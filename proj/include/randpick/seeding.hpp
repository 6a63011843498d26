#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "randpick/centrality.hpp"
#include "randpick/color.hpp"
#include "randpick/graph.hpp"

namespace randpick {

struct GreedyConfig {
    std::uint32_t k = 1;
    double epsilon = 0.1;
    std::uint64_t reps = 300;  // per-estimate replications in practical mode
    // R = ceil(27 n k^2 ln(n^3) / eps^2); far larger than the practical
    // default, only sensible on small instances.
    bool paper_formula = false;
    std::uint64_t round_cap = 0;  // 0: dynamics default
    std::uint64_t seed = 0;
    int workers = 1;
};

std::uint64_t paper_formula_reps(std::uint32_t n, std::uint32_t k, double epsilon);

struct SeedSelection {
    std::vector<NodeId> seeds;  // insertion order
    std::vector<double> step_estimates;
    std::uint64_t simulations = 0;
    std::uint64_t capped_runs = 0;
    double wall_seconds = 0.0;
};

// Mean over `reps` runs of the final red count starting from `state` with
// `seeds` recolored red. Integer totals keep the value identical for any
// worker split. Capped runs contribute their count at the cap and are
// tallied into *capped_runs when given.
double estimate_spread(const Graph& g, const ColorState& state, std::span<const NodeId> seeds,
                       std::uint64_t reps, std::uint64_t seed, std::uint64_t round_cap = 0,
                       int workers = 1, std::uint64_t* capped_runs = nullptr);

// Hill climbing: k argmax-by-estimate insertions over candidates outside
// the blue set, fresh derived seed per (step, candidate), ties to the
// lower node id.
SeedSelection greedy_select(const Graph& g, const ColorState& state, const GreedyConfig& config);

// Top-k uncolored nodes by centrality score, ties to lower id. measure is
// one of pagerank, closeness, betweenness, indegree, outdegree; indegree
// is rejected on undirected graphs (it would duplicate outdegree).
std::vector<NodeId> baseline_select(const Graph& g, const ColorState& state, std::uint32_t k,
                                    const std::string& measure);

// Same selection from precomputed scores (one score vector serves many
// trials in the comparison driver).
std::vector<NodeId> top_k_uncolored(const ScoreVector& scores, const ColorState& state,
                                    std::uint32_t k);

// Detect >= 2k communities, order them by ascending blue count (ties by
// community id), then take one seeded-uniform uncolored node from each of
// the first k communities that still have uncolored nodes.
std::vector<NodeId> community_select(const Graph& g, const ColorState& state, std::uint32_t k,
                                     std::uint64_t seed);

struct CompareRow {
    std::string algorithm;
    std::uint32_t k = 0;
    std::uint32_t b0 = 0;
    double mean_red_ratio = 0.0;
    double std_red_ratio = 0.0;
    std::uint32_t trials = 0;
    std::uint64_t capped_runs = 0;
};

struct CompareConfig {
    std::uint32_t b0 = 0;
    std::vector<std::uint32_t> k_values;
    std::vector<std::string> algorithms;
    std::uint32_t trials = 300;
    std::uint64_t reps = 300;
    double epsilon = 0.1;
    std::uint64_t round_cap = 0;
    std::uint64_t seed = 0;
    int workers = 1;
};

// Per trial: draw b0 blue nodes (the same draw serves every algorithm and
// every k, a paired design), select seeds, simulate once, record the final
// red fraction. Rows follow the (algorithm, k) input order.
std::vector<CompareRow> compare_experiment(const Graph& g, const CompareConfig& config);

}  // namespace randpick
