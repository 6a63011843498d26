#include "randpick/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "randpick/rng.hpp"

namespace randpick {

PickProfile sample_profile(const Graph& g, std::uint64_t horizon, std::uint64_t seed) {
    PickProfile p;
    p.horizon = horizon;
    p.picks.assign(g.n(), std::vector<std::int32_t>(horizon, PickProfile::kNoPick));
    for (std::uint64_t t = 1; t <= horizon; ++t) {
        std::uint64_t rk = rng::round_key(seed, t);
        for (NodeId v = 0; v < g.n(); ++v) {
            std::uint32_t d = g.out_degree(v);
            if (d == 0) continue;
            p.picks[v][t - 1] =
                std::int32_t(g.out_neighbors(v)[rng::bounded(rng::pick_bits(rk, v), d)]);
        }
    }
    return p;
}

bool step(const Graph& g, ColorState& state, std::uint64_t seed, std::uint64_t round) {
    if (state.n() != g.n()) throw std::invalid_argument("state size does not match graph");
    std::uint64_t rk = rng::round_key(seed, round);
    std::vector<std::pair<NodeId, Color>> changes;
    for (NodeId v = 0; v < g.n(); ++v) {
        if (state.color(v) != Color::Uncolored) continue;
        std::uint32_t d = g.out_degree(v);
        if (d == 0) continue;
        NodeId target = g.out_neighbors(v)[rng::bounded(rng::pick_bits(rk, v), d)];
        Color c = state.color(target);
        if (c != Color::Uncolored) changes.emplace_back(v, c);
    }
    for (auto [v, c] : changes) state.set_color(v, c);
    return !changes.empty();
}

bool step_with_picks(const Graph& g, ColorState& state,
                     std::span<const std::int32_t> round_picks) {
    if (state.n() != g.n() || round_picks.size() != g.n())
        throw std::invalid_argument("state/picks size does not match graph");
    std::vector<std::pair<NodeId, Color>> changes;
    for (NodeId v = 0; v < g.n(); ++v) {
        if (state.color(v) != Color::Uncolored) continue;
        std::int32_t pk = round_picks[v];
        if (pk == PickProfile::kNoPick) continue;
        if (pk < 0 || !g.has_edge(v, NodeId(pk)))
            throw std::invalid_argument("pick " + std::to_string(pk) +
                                        " is not an out-neighbor of node " + std::to_string(v));
        Color c = state.color(NodeId(pk));
        if (c != Color::Uncolored) changes.emplace_back(v, c);
    }
    for (auto [v, c] : changes) state.set_color(v, c);
    return !changes.empty();
}

bool is_stable(const Graph& g, const ColorState& state) {
    for (NodeId v = 0; v < g.n(); ++v) {
        if (state.color(v) != Color::Uncolored) continue;
        for (NodeId w : g.out_neighbors(v))
            if (state.color(w) != Color::Uncolored) return false;
    }
    return true;
}

std::uint64_t default_round_cap(const Graph& g) {
    double bound = 4.0 * g.diameter() * g.max_out_degree() * std::log2(double(g.n()));
    return std::uint64_t(10.0 * (bound + 1.0));
}

PreparedRun::PreparedRun(const Graph& g, const ColorState& initial) : g_(&g) {
    if (initial.n() != g.n()) throw std::invalid_argument("state size does not match graph");
    colors0_.assign(initial.colors().begin(), initial.colors().end());
    pending0_ = eventually_colorable(g, initial);
    reds0_ = initial.red_count();
    blues0_ = initial.blue_count();
}

PreparedRun::Outcome PreparedRun::simulate(
    std::uint64_t seed, std::uint64_t max_rounds, SimScratch& scratch,
    std::vector<std::array<std::uint32_t, 3>>* trajectory) const {
    const std::uint64_t* offsets = g_->out_offsets_data();
    const NodeId* targets = g_->out_targets_data();
    const std::uint32_t n = g_->n();

    scratch.colors.assign(colors0_.begin(), colors0_.end());
    scratch.pending.assign(pending0_.begin(), pending0_.end());
    if (scratch.newly.size() < pending0_.size()) {
        scratch.newly.resize(pending0_.size());
        scratch.newly_color.resize(pending0_.size());
    }
    // Raw pointers keep the scan free of aliasing reloads; the appends are
    // branchless because adoption is data-dependent and defeats prediction.
    Color* colors = scratch.colors.data();
    NodeId* pending = scratch.pending.data();
    NodeId* newly = scratch.newly.data();
    Color* newly_color = scratch.newly_color.data();

    Outcome out;
    out.reds = reds0_;
    out.blues = blues0_;
    // Invariant: pending holds exactly the uncolored eventually-colorable
    // nodes, so remaining == 0 is equivalent to stability.
    std::size_t remaining = pending0_.size();

    while (remaining > 0 && out.rounds < max_rounds) {
        ++out.rounds;
        const std::uint64_t rk = rng::round_key(seed, out.rounds);
        std::size_t write = 0, adopted = 0;
        for (std::size_t i = 0; i < remaining; ++i) {
            const NodeId v = pending[i];
            const std::uint64_t off = offsets[v];
            const std::uint32_t d = std::uint32_t(offsets[v + 1] - off);
            const NodeId target = targets[off + rng::bounded(rng::pick_bits(rk, v), d)];
            const Color c = colors[target];
            pending[write] = v;
            write += (c == Color::Uncolored);
            newly[adopted] = v;
            newly_color[adopted] = c;
            adopted += (c != Color::Uncolored);
        }
        // apply after the scan: all picks above read the pre-round state
        for (std::size_t i = 0; i < adopted; ++i) {
            colors[newly[i]] = newly_color[i];
            out.reds += (newly_color[i] == Color::Red);
            out.blues += (newly_color[i] == Color::Blue);
        }
        remaining = write;
        if (trajectory)
            trajectory->push_back({out.reds, out.blues, n - out.reds - out.blues});
    }
    out.converged = remaining == 0;
    return out;
}

namespace {

ColorState state_from_colors(const std::vector<Color>& colors) {
    ColorState s(std::uint32_t(colors.size()));
    for (NodeId v = 0; v < colors.size(); ++v)
        if (colors[v] != Color::Uncolored) s.set_color(v, colors[v]);
    return s;
}

}  // namespace

RunResult run(const Graph& g, const ColorState& initial, std::uint64_t seed,
              std::uint64_t max_rounds) {
    PreparedRun prepared(g, initial);
    SimScratch scratch;
    RunResult res;
    res.trajectory.push_back(
        {initial.red_count(), initial.blue_count(), initial.uncolored_count()});
    auto outcome = prepared.simulate(seed, max_rounds, scratch, &res.trajectory);
    res.rounds = outcome.rounds;
    res.converged = outcome.converged;
    res.final_state = state_from_colors(scratch.colors);
    return res;
}

RunResult replay(const Graph& g, const ColorState& initial, const PickProfile& profile) {
    RunResult res;
    res.final_state = initial;
    res.trajectory.push_back(
        {initial.red_count(), initial.blue_count(), initial.uncolored_count()});
    while (res.rounds < profile.horizon && !is_stable(g, res.final_state)) {
        ++res.rounds;
        std::vector<std::int32_t> round_picks(g.n());
        for (NodeId v = 0; v < g.n(); ++v) round_picks[v] = profile.picks[v][res.rounds - 1];
        step_with_picks(g, res.final_state, round_picks);
        res.trajectory.push_back({res.final_state.red_count(), res.final_state.blue_count(),
                                  res.final_state.uncolored_count()});
    }
    res.converged = is_stable(g, res.final_state);
    return res;
}

std::vector<NodeId> extended_sequence(const Graph& g, const PickProfile& profile, NodeId v,
                                      std::uint64_t t) {
    if (t > profile.horizon) throw std::invalid_argument("t exceeds profile horizon");
    if (v >= g.n()) throw std::out_of_range("node out of range");
    if (t == 0) return {v};
    std::vector<NodeId> seq = extended_sequence(g, profile, v, t - 1);
    std::int32_t pk = profile.pick(v, t);
    if (pk != PickProfile::kNoPick) {
        std::vector<NodeId> tail = extended_sequence(g, profile, NodeId(pk), t - 1);
        seq.insert(seq.end(), tail.begin(), tail.end());
    }
    return seq;
}

namespace {

Color first_colored_in_es(const Graph& g, const ColorState& state0, const PickProfile& profile,
                          NodeId v, std::uint64_t t) {
    if (t == 0) return state0.color(v);
    Color c = first_colored_in_es(g, state0, profile, v, t - 1);
    if (c != Color::Uncolored) return c;
    std::int32_t pk = profile.pick(v, t);
    if (pk == PickProfile::kNoPick) return Color::Uncolored;
    return first_colored_in_es(g, state0, profile, NodeId(pk), t - 1);
}

}  // namespace

Color final_color_via_es(const Graph& g, const ColorState& state0, const PickProfile& profile,
                         NodeId v, std::uint64_t t) {
    if (t > profile.horizon) throw std::invalid_argument("t exceeds profile horizon");
    if (v >= g.n()) throw std::out_of_range("node out of range");
    return first_colored_in_es(g, state0, profile, v, t);
}

std::uint64_t chain_traversal_time(const Graph& g, std::span<const NodeId> chain,
                                   std::uint64_t seed) {
    if (chain.empty()) throw std::invalid_argument("chain must be non-empty");
    for (std::size_t i = 1; i < chain.size(); ++i)
        if (!g.has_edge(chain[i], chain[i - 1]))
            throw std::invalid_argument("chain edge (" + std::to_string(chain[i]) + ", " +
                                        std::to_string(chain[i - 1]) + ") missing");
    std::uint64_t rounds = 0;
    for (std::size_t i = 1; i < chain.size(); ++i) {
        auto nbrs = g.out_neighbors(chain[i]);
        std::uint32_t d = std::uint32_t(nbrs.size());
        for (;;) {
            ++rounds;
            std::uint64_t rk = rng::round_key(seed, rounds);
            if (nbrs[rng::bounded(rng::pick_bits(rk, chain[i]), d)] == chain[i - 1]) break;
        }
    }
    return rounds;
}

}  // namespace randpick
