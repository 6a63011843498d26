#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "randpick/color.hpp"
#include "randpick/graph.hpp"

namespace randpick {

// Worst-case round bounds for the pick process. The directed form
// 4*D*max_outdeg*log2(n) holds w.h.p. for any graph; the 20*n*log2(n)
// form only applies to connected undirected graphs.
double directed_convergence_bound(std::uint32_t n, std::uint64_t diameter,
                                  std::uint32_t max_out_degree);
double directed_convergence_bound(const Graph& g);
double undirected_convergence_bound(std::uint32_t n);

// Per-node experiment: for every v, run `trials` simulations from the state
// where only v is red and average the convergence time. Runs that hit the
// round cap are excluded from every mean and counted instead.
struct ConvergenceStats {
    std::vector<double> node_mean_rounds;          // NaN when no trial converged
    std::vector<std::uint64_t> node_unconverged;   // capped runs per node
    std::uint64_t trials = 0;
    double min_mean = 0.0;  // aggregates over nodes with a defined mean
    double max_mean = 0.0;
    double avg_mean = 0.0;
    std::uint64_t unconverged_total = 0;
    double bound_directed = 0.0;
    double bound_undirected = 0.0;  // NaN on directed graphs
    std::uint64_t m = 0;
    std::uint64_t bound_violations = 0;  // converged observations > bound_directed
    std::vector<std::uint64_t> observed_rounds;  // converged observations, audit input
};

ConvergenceStats per_node_convergence(const Graph& g, std::uint64_t trials, std::uint64_t seed,
                                      std::uint64_t round_cap = 0, int workers = 1);

// Each node independently red with probability q, else uncolored.
ColorState q_random_state(std::uint32_t n, double q, std::uint64_t seed);
ColorState q_random_state(const Graph& g, double q, std::uint64_t seed);

struct QSweepRow {
    double q = 0.0;
    double mean_rounds = 0.0;  // NaN when no trial converged
    double std_rounds = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t unconverged = 0;
};

struct QBenchResult {
    std::vector<QSweepRow> rows;
    double pearson_r = 0.0;  // NaN when fewer than two defined means or zero variance
};

QBenchResult q_sweep(const Graph& g, std::span<const double> q_list, std::uint64_t trials,
                     std::uint64_t seed, std::uint64_t round_cap = 0, int workers = 1);

// Sample correlation. Throws on length mismatch or fewer than two points;
// returns NaN when either side has zero variance.
double pearson(std::span<const double> xs, std::span<const double> ys);

struct BoundReport {
    double bound_directed = 0.0;
    double bound_undirected = 0.0;  // NaN on directed graphs
    double bound_m_over_beta = 0.0;
    std::uint64_t observations = 0;
    std::uint64_t violations_directed = 0;
    std::uint64_t violations_undirected = 0;  // always 0 on directed graphs
    std::uint64_t violations_m_over_beta = 0;
};

// The m/beta bound is Markov on E[T] <= m, so up to a beta fraction of
// observations may legitimately exceed it; the directed bound is w.h.p.
BoundReport bound_report(const Graph& g, std::span<const std::uint64_t> observed, double beta);

}  // namespace randpick
