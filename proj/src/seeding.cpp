#include "randpick/seeding.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

#include "randpick/dynamics.hpp"
#include "randpick/errors.hpp"
#include "randpick/parallel.hpp"
#include "randpick/rng.hpp"

namespace randpick {

namespace {

constexpr std::uint64_t kStreamBlue = 0xb1;
constexpr std::uint64_t kStreamEval = 0xe7;
constexpr std::uint64_t kStreamStep = 0x9d;
constexpr std::uint64_t kStreamCommunity = 0xc0;
constexpr std::uint64_t kStreamCommunityPick = 0xc1;

constexpr std::uint64_t kRepBlock = 1024;

}  // namespace

std::uint64_t paper_formula_reps(std::uint32_t n, std::uint32_t k, double epsilon) {
    double r = 27.0 * n * double(k) * double(k) * std::log(std::pow(double(n), 3.0)) /
               (epsilon * epsilon);
    return std::max<std::uint64_t>(1, std::uint64_t(std::ceil(r)));
}

double estimate_spread(const Graph& g, const ColorState& state, std::span<const NodeId> seeds,
                       std::uint64_t reps, std::uint64_t seed, std::uint64_t round_cap,
                       int workers, std::uint64_t* capped_runs) {
    if (reps < 1) throw std::invalid_argument("need at least one replication");
    ColorState seeded = state;
    for (NodeId v : seeds) {
        if (seeded.color(v) == Color::Blue)
            throw std::invalid_argument("seed node " + std::to_string(v) + " is blue");
        seeded.set_color(v, Color::Red);
    }
    const std::uint64_t cap = round_cap ? round_cap : default_round_cap(g);
    PreparedRun prepared(g, seeded);
    const std::uint64_t blocks = (reps + kRepBlock - 1) / kRepBlock;
    std::vector<std::uint64_t> red_total(blocks, 0), capped_total(blocks, 0);
    parallel_for(0, blocks, workers, [&](std::size_t b) {
        SimScratch scratch;
        std::uint64_t reds = 0, capped = 0;
        const std::uint64_t hi = std::min(reps, (b + 1) * kRepBlock);
        for (std::uint64_t rep = b * kRepBlock; rep < hi; ++rep) {
            auto outcome = prepared.simulate(rng::derive(seed, rep), cap, scratch);
            reds += outcome.reds;
            capped += !outcome.converged;
        }
        red_total[b] = reds;
        capped_total[b] = capped;
    });
    std::uint64_t reds = 0, capped = 0;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        reds += red_total[b];
        capped += capped_total[b];
    }
    if (capped_runs) *capped_runs += capped;
    return double(reds) / double(reps);
}

SeedSelection greedy_select(const Graph& g, const ColorState& state, const GreedyConfig& config) {
    if (config.k < 1) throw std::invalid_argument("budget must be at least 1");
    if (!(config.epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
    if (state.n() != g.n()) throw std::invalid_argument("state size does not match graph");
    const std::uint64_t reps =
        config.paper_formula ? paper_formula_reps(g.n(), config.k, config.epsilon) : config.reps;
    if (reps < 1) throw std::invalid_argument("need at least one replication");
    if (std::uint64_t(config.k) + state.blue_count() > g.n())
        throw InfeasibleError("budget " + std::to_string(config.k) +
                              " exceeds the non-blue node count");

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t cap = config.round_cap ? config.round_cap : default_round_cap(g);
    SeedSelection sel;
    ColorState current = state;
    std::vector<char> in_a(g.n(), 0);
    for (std::uint32_t step = 0; step < config.k; ++step) {
        std::vector<NodeId> candidates;
        for (NodeId v = 0; v < g.n(); ++v)
            if (state.color(v) != Color::Blue && !in_a[v]) candidates.push_back(v);
        std::vector<double> values(candidates.size());
        std::vector<std::uint64_t> capped(candidates.size(), 0);
        parallel_for(0, candidates.size(), config.workers, [&](std::size_t i) {
            const NodeId candidate = candidates[i];
            std::array<NodeId, 1> extra{candidate};
            values[i] = estimate_spread(g, current, extra, reps,
                                        rng::derive(config.seed, kStreamStep, step, candidate),
                                        cap, 1, &capped[i]);
        });
        std::size_t best = 0;
        for (std::size_t i = 1; i < values.size(); ++i)
            if (values[i] > values[best]) best = i;
        in_a[candidates[best]] = 1;
        current.set_color(candidates[best], Color::Red);
        sel.seeds.push_back(candidates[best]);
        sel.step_estimates.push_back(values[best]);
        sel.simulations += reps * candidates.size();
        for (std::uint64_t c : capped) sel.capped_runs += c;
    }
    sel.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return sel;
}

std::vector<NodeId> top_k_uncolored(const ScoreVector& scores, const ColorState& state,
                                    std::uint32_t k) {
    std::vector<NodeId> order;
    for (NodeId v = 0; v < state.n(); ++v)
        if (state.color(v) == Color::Uncolored) order.push_back(v);
    if (k > order.size())
        throw InfeasibleError("budget " + std::to_string(k) + " exceeds the " +
                              std::to_string(order.size()) + " uncolored nodes");
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        return scores.scores[a] > scores.scores[b];  // stable keeps lower id on ties
    });
    order.resize(k);
    return order;
}

namespace {

ScoreVector measure_scores(const Graph& g, const std::string& measure) {
    if (measure == "pagerank") return pagerank(g);
    if (measure == "closeness") return closeness(g);
    if (measure == "betweenness") return betweenness(g);
    if (measure == "outdegree") return degree_scores(g, Direction::Out);
    if (measure == "indegree") {
        if (g.undirected())
            throw std::invalid_argument(
                "indegree duplicates outdegree on undirected graphs; pick outdegree");
        return degree_scores(g, Direction::In);
    }
    throw std::invalid_argument("unknown measure '" + measure + "'");
}

}  // namespace

std::vector<NodeId> baseline_select(const Graph& g, const ColorState& state, std::uint32_t k,
                                    const std::string& measure) {
    if (state.n() != g.n()) throw std::invalid_argument("state size does not match graph");
    return top_k_uncolored(measure_scores(g, measure), state, k);
}

std::vector<NodeId> community_select(const Graph& g, const ColorState& state, std::uint32_t k,
                                     std::uint64_t seed) {
    if (state.n() != g.n()) throw std::invalid_argument("state size does not match graph");
    if (k < 1) throw std::invalid_argument("budget must be at least 1");
    const std::uint32_t wanted = std::min<std::uint64_t>(2ull * k, g.n());
    auto labels =
        label_propagation_communities(g, rng::derive(seed, kStreamCommunity), wanted);
    std::uint32_t count = *std::max_element(labels.begin(), labels.end()) + 1;
    struct Community {
        std::uint32_t blues = 0;
        std::vector<NodeId> uncolored;
    };
    std::vector<Community> communities(count);
    for (NodeId v = 0; v < g.n(); ++v) {
        if (state.color(v) == Color::Blue) communities[labels[v]].blues++;
        else if (state.color(v) == Color::Uncolored)
            communities[labels[v]].uncolored.push_back(v);
    }
    std::vector<std::uint32_t> order(count);
    for (std::uint32_t c = 0; c < count; ++c) order[c] = c;
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return communities[a].blues < communities[b].blues;
    });
    std::vector<NodeId> picks;
    rng::SplitMix64 gen(rng::derive(seed, kStreamCommunityPick));
    for (std::uint32_t c : order) {
        if (picks.size() == k) break;
        auto& pool = communities[c].uncolored;
        if (pool.empty()) continue;  // fully colored community
        picks.push_back(pool[gen.below(std::uint32_t(pool.size()))]);
    }
    if (picks.size() < k)
        throw InfeasibleError("only " + std::to_string(picks.size()) +
                              " communities have uncolored nodes, budget is " +
                              std::to_string(k));
    return picks;
}

std::vector<CompareRow> compare_experiment(const Graph& g, const CompareConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("need at least one trial");
    if (config.algorithms.empty()) throw std::invalid_argument("no algorithms requested");
    std::uint32_t max_k = 0;
    for (std::uint32_t k : config.k_values) max_k = std::max(max_k, k);
    if (std::uint64_t(config.b0) + max_k > g.n())
        throw InfeasibleError("b0 + k exceeds node count");

    // centrality scores do not depend on the state: compute once
    std::map<std::string, ScoreVector> score_cache;
    for (const auto& name : config.algorithms)
        if (name != "greedy" && name != "community" && !score_cache.count(name))
            score_cache.emplace(name, measure_scores(g, name));

    const std::uint64_t cap = config.round_cap ? config.round_cap : default_round_cap(g);
    struct Acc {
        double sum = 0.0, sum_sq = 0.0;
        std::uint64_t capped = 0;
    };
    std::vector<Acc> acc(config.algorithms.size() * config.k_values.size());

    for (std::uint32_t trial = 0; trial < config.trials; ++trial) {
        rng::SplitMix64 blue_gen(rng::derive(config.seed, kStreamBlue, trial));
        auto blues = rng::sample_without_replacement(g.n(), config.b0, blue_gen);
        ColorState state(g.n());
        for (NodeId b : blues) state.set_color(b, Color::Blue);

        for (std::size_t ai = 0; ai < config.algorithms.size(); ++ai) {
            const std::string& algo = config.algorithms[ai];
            for (std::size_t ki = 0; ki < config.k_values.size(); ++ki) {
                const std::uint32_t k = config.k_values[ki];
                Acc& a = acc[ai * config.k_values.size() + ki];
                std::vector<NodeId> seeds;
                if (k > 0) {
                    if (algo == "greedy") {
                        GreedyConfig gc;
                        gc.k = k;
                        gc.epsilon = config.epsilon;
                        gc.reps = config.reps;
                        gc.round_cap = cap;
                        gc.seed = rng::derive(config.seed, kStreamStep, trial, k);
                        gc.workers = config.workers;
                        auto sel = greedy_select(g, state, gc);
                        seeds = sel.seeds;
                        a.capped += sel.capped_runs;
                    } else if (algo == "community") {
                        seeds = community_select(g, state, k,
                                                 rng::derive(config.seed, kStreamCommunity,
                                                             trial, k));
                    } else {
                        seeds = top_k_uncolored(score_cache.at(algo), state, k);
                    }
                }
                ColorState seeded = state;
                for (NodeId v : seeds) seeded.set_color(v, Color::Red);
                PreparedRun prepared(g, seeded);
                SimScratch scratch;
                auto outcome = prepared.simulate(
                    rng::derive(config.seed, kStreamEval, trial, k * 64 + ai), cap, scratch);
                a.capped += !outcome.converged;
                double ratio = double(outcome.reds) / double(g.n());
                a.sum += ratio;
                a.sum_sq += ratio * ratio;
            }
        }
    }

    std::vector<CompareRow> rows;
    for (std::size_t ai = 0; ai < config.algorithms.size(); ++ai)
        for (std::size_t ki = 0; ki < config.k_values.size(); ++ki) {
            const Acc& a = acc[ai * config.k_values.size() + ki];
            CompareRow row;
            row.algorithm = config.algorithms[ai];
            row.k = config.k_values[ki];
            row.b0 = config.b0;
            row.trials = config.trials;
            row.capped_runs = a.capped;
            row.mean_red_ratio = a.sum / config.trials;
            if (config.trials > 1) {
                double var = (a.sum_sq - config.trials * row.mean_red_ratio * row.mean_red_ratio) /
                             (config.trials - 1);
                row.std_red_ratio = var > 0 ? std::sqrt(var) : 0.0;
            }
            rows.push_back(std::move(row));
        }
    return rows;
}

}  // namespace randpick
