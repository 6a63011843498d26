#include "randpick/bench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "randpick/dynamics.hpp"
#include "randpick/parallel.hpp"
#include "randpick/rng.hpp"

namespace randpick {

namespace {

constexpr std::uint64_t kStreamNodeTrial = 0x70d3;
constexpr std::uint64_t kStreamQState = 0x9574;
constexpr std::uint64_t kStreamQRun = 0x9b01;
constexpr std::uint64_t kUncapped = std::numeric_limits<std::uint64_t>::max();

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

double directed_convergence_bound(std::uint32_t n, std::uint64_t diameter,
                                  std::uint32_t max_out_degree) {
    if (n <= 1) return 0.0;
    return 4.0 * double(diameter) * double(max_out_degree) * std::log2(double(n));
}

double directed_convergence_bound(const Graph& g) {
    return directed_convergence_bound(g.n(), g.diameter(), g.max_out_degree());
}

double undirected_convergence_bound(std::uint32_t n) {
    if (n <= 1) return 0.0;
    return 20.0 * double(n) * std::log2(double(n));
}

ConvergenceStats per_node_convergence(const Graph& g, std::uint64_t trials, std::uint64_t seed,
                                      std::uint64_t round_cap, int workers) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    const std::uint64_t cap = round_cap ? round_cap : default_round_cap(g);

    ConvergenceStats stats;
    stats.trials = trials;
    stats.node_mean_rounds.assign(g.n(), kNaN);
    stats.node_unconverged.assign(g.n(), 0);
    stats.bound_directed = directed_convergence_bound(g);
    stats.bound_undirected = g.undirected() ? undirected_convergence_bound(g.n()) : kNaN;
    stats.m = g.m();

    std::vector<std::uint64_t> rounds(std::size_t(g.n()) * trials, kUncapped);
    parallel_for(0, g.n(), workers, [&](std::size_t vi) {
        const NodeId v = NodeId(vi);
        ColorState initial(g.n());
        initial.set_color(v, Color::Red);
        PreparedRun prepared(g, initial);
        SimScratch scratch;
        for (std::uint64_t trial = 0; trial < trials; ++trial) {
            auto outcome = prepared.simulate(rng::derive(seed, kStreamNodeTrial, v, trial), cap,
                                             scratch);
            if (outcome.converged) rounds[vi * trials + trial] = outcome.rounds;
        }
    });

    double sum_means = 0.0;
    std::uint64_t defined = 0;
    stats.min_mean = kNaN;
    stats.max_mean = kNaN;
    stats.avg_mean = kNaN;
    for (NodeId v = 0; v < g.n(); ++v) {
        std::uint64_t total = 0, converged = 0;
        for (std::uint64_t trial = 0; trial < trials; ++trial) {
            std::uint64_t r = rounds[std::size_t(v) * trials + trial];
            if (r == kUncapped) continue;
            total += r;
            ++converged;
            stats.observed_rounds.push_back(r);
            if (double(r) > stats.bound_directed) ++stats.bound_violations;
        }
        stats.node_unconverged[v] = trials - converged;
        stats.unconverged_total += trials - converged;
        if (converged == 0) continue;
        double mean = double(total) / double(converged);
        stats.node_mean_rounds[v] = mean;
        sum_means += mean;
        ++defined;
        if (defined == 1) {
            stats.min_mean = stats.max_mean = mean;
        } else {
            stats.min_mean = std::min(stats.min_mean, mean);
            stats.max_mean = std::max(stats.max_mean, mean);
        }
    }
    if (defined > 0) stats.avg_mean = sum_means / double(defined);
    return stats;
}

ColorState q_random_state(std::uint32_t n, double q, std::uint64_t seed) {
    if (!(q > 0.0) || !(q < 1.0)) throw std::invalid_argument("q must be in (0, 1)");
    ColorState state(n);
    for (NodeId v = 0; v < n; ++v)
        if (rng::unit(rng::derive(seed, kStreamQState, v)) < q) state.set_color(v, Color::Red);
    return state;
}

ColorState q_random_state(const Graph& g, double q, std::uint64_t seed) {
    return q_random_state(g.n(), q, seed);
}

QBenchResult q_sweep(const Graph& g, std::span<const double> q_list, std::uint64_t trials,
                     std::uint64_t seed, std::uint64_t round_cap, int workers) {
    if (q_list.empty()) throw std::invalid_argument("need at least one q value");
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    for (double q : q_list)
        if (!(q > 0.0) || !(q < 1.0)) throw std::invalid_argument("q must be in (0, 1)");
    const std::uint64_t cap = round_cap ? round_cap : default_round_cap(g);

    QBenchResult result;
    result.rows.resize(q_list.size());
    std::vector<std::uint64_t> rounds(q_list.size() * trials, kUncapped);
    parallel_for(0, q_list.size() * trials, workers, [&](std::size_t idx) {
        const std::size_t qi = idx / trials;
        const std::uint64_t trial = idx % trials;
        ColorState state =
            q_random_state(g.n(), q_list[qi], rng::derive(seed, kStreamQState, qi, trial));
        PreparedRun prepared(g, state);
        SimScratch scratch;
        auto outcome =
            prepared.simulate(rng::derive(seed, kStreamQRun, qi, trial), cap, scratch);
        if (outcome.converged) rounds[idx] = outcome.rounds;
    });

    for (std::size_t qi = 0; qi < q_list.size(); ++qi) {
        QSweepRow& row = result.rows[qi];
        row.q = q_list[qi];
        row.trials = trials;
        double sum = 0.0, sum_sq = 0.0;
        std::uint64_t converged = 0;
        for (std::uint64_t trial = 0; trial < trials; ++trial) {
            std::uint64_t r = rounds[qi * trials + trial];
            if (r == kUncapped) continue;
            sum += double(r);
            sum_sq += double(r) * double(r);
            ++converged;
        }
        row.unconverged = trials - converged;
        if (converged == 0) {
            row.mean_rounds = kNaN;
            row.std_rounds = kNaN;
            continue;
        }
        row.mean_rounds = sum / double(converged);
        if (converged > 1) {
            double var = (sum_sq - converged * row.mean_rounds * row.mean_rounds) /
                         double(converged - 1);
            row.std_rounds = var > 0 ? std::sqrt(var) : 0.0;
        }
    }

    std::vector<double> qs, means;
    for (const QSweepRow& row : result.rows)
        if (!std::isnan(row.mean_rounds)) {
            qs.push_back(row.q);
            means.push_back(row.mean_rounds);
        }
    result.pearson_r = qs.size() >= 2 ? pearson(qs, means) : kNaN;
    return result;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("length mismatch");
    if (xs.size() < 2) throw std::invalid_argument("need at least two points");
    const double n = double(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) return kNaN;
    return sxy / std::sqrt(sxx * syy);
}

BoundReport bound_report(const Graph& g, std::span<const std::uint64_t> observed, double beta) {
    if (!(beta > 0.0) || !(beta < 1.0)) throw std::invalid_argument("beta must be in (0, 1)");
    BoundReport report;
    report.bound_directed = directed_convergence_bound(g);
    report.bound_undirected = g.undirected() ? undirected_convergence_bound(g.n()) : kNaN;
    report.bound_m_over_beta = double(g.m()) / beta;
    report.observations = observed.size();
    for (std::uint64_t r : observed) {
        if (double(r) > report.bound_directed) ++report.violations_directed;
        if (g.undirected() && double(r) > report.bound_undirected)
            ++report.violations_undirected;
        if (double(r) > report.bound_m_over_beta) ++report.violations_m_over_beta;
    }
    return report;
}

}  // namespace randpick
