#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "randpick/color.hpp"
#include "randpick/graph.hpp"

namespace randpick {

// Recorded out-neighbor picks: picks[v][t-1] is the node v picked in round t
// (rounds are 1-based), kNoPick for nodes without out-edges.
struct PickProfile {
    static constexpr std::int32_t kNoPick = -1;

    std::uint64_t horizon = 0;
    std::vector<std::vector<std::int32_t>> picks;

    std::int32_t pick(NodeId v, std::uint64_t round) const { return picks[v][round - 1]; }
};

PickProfile sample_profile(const Graph& g, std::uint64_t horizon, std::uint64_t seed);

struct RunResult {
    ColorState final_state;
    std::uint64_t rounds = 0;
    bool converged = false;
    // (red, blue, uncolored) after each round, starting with the initial state.
    std::vector<std::array<std::uint32_t, 3>> trajectory;
};

// One synchronous round: every uncolored node with out-edges picks one
// out-neighbor uniformly (derived from (seed, round, node), so any
// iteration order gives the same result) and adopts its color if colored.
// Returns whether any node changed.
bool step(const Graph& g, ColorState& state, std::uint64_t seed, std::uint64_t round);

// Deterministic analogue with supplied picks; round_picks[v] must be an
// out-neighbor of v or PickProfile::kNoPick.
bool step_with_picks(const Graph& g, ColorState& state,
                     std::span<const std::int32_t> round_picks);

// True iff no uncolored node has a colored out-neighbor.
bool is_stable(const Graph& g, const ColorState& state);

// 10 * (4 * D * max_out_degree * log2(n) + 1): ten times the high-probability
// convergence bound. Runs that hit a cap report converged=false.
std::uint64_t default_round_cap(const Graph& g);

RunResult run(const Graph& g, const ColorState& initial, std::uint64_t seed,
              std::uint64_t max_rounds);

// Replays profile rounds 1..horizon, stopping early once stable.
RunResult replay(const Graph& g, const ColorState& initial, const PickProfile& profile);

// es^0(v) = [v]; es^t(v) = es^{t-1}(v) followed by es^{t-1}(v') where v' is
// v's recorded pick in round t (omitted when v has no out-edges). The color
// a node has after t replayed rounds equals the initial color of the first
// initially-colored node in its sequence.
std::vector<NodeId> extended_sequence(const Graph& g, const PickProfile& profile, NodeId v,
                                      std::uint64_t t);

Color final_color_via_es(const Graph& g, const ColorState& state0, const PickProfile& profile,
                         NodeId v, std::uint64_t t);

// Picks round after round until chain[1] picks chain[0], then chain[2] picks
// chain[1], and so on; returns the total rounds. Requires each (chain[i],
// chain[i-1]) to be an arc. Expected value is the sum of the out-degrees of
// chain[1..].
std::uint64_t chain_traversal_time(const Graph& g, std::span<const NodeId> chain,
                                   std::uint64_t seed);

// Reusable buffers for repeated simulations.
struct SimScratch {
    std::vector<Color> colors;
    std::vector<NodeId> pending;
    std::vector<NodeId> newly;
    std::vector<Color> newly_color;
};

// An initial state compiled for many simulation runs: the base color array
// and the list of nodes that can ever be colored are computed once. A run
// only draws picks for still-uncolored nodes from that list; every other
// node either never changes or already changed, so the sampled trajectory
// is identical to the full per-node process under the same seed.
class PreparedRun {
public:
    PreparedRun(const Graph& g, const ColorState& initial);

    struct Outcome {
        std::uint64_t rounds = 0;
        bool converged = false;
        std::uint32_t reds = 0;
        std::uint32_t blues = 0;
    };

    // Appends one (r, b, u) row per executed round when trajectory != nullptr.
    Outcome simulate(std::uint64_t seed, std::uint64_t max_rounds, SimScratch& scratch,
                     std::vector<std::array<std::uint32_t, 3>>* trajectory = nullptr) const;

    const std::vector<Color>& initial_colors() const { return colors0_; }
    std::uint32_t colorable_count() const { return std::uint32_t(pending0_.size()); }

private:
    const Graph* g_;
    std::vector<Color> colors0_;
    std::vector<NodeId> pending0_;
    std::uint32_t reds0_ = 0;
    std::uint32_t blues0_ = 0;
};

}  // namespace randpick
