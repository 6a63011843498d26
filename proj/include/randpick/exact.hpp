#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "randpick/color.hpp"
#include "randpick/graph.hpp"

namespace randpick::exact {

// Base-3 packed ColorState: digit v is 0 uncolored, 1 red, 2 blue.
// Bijective for n <= kMaxNodes.
using StateIndex = std::uint32_t;

inline constexpr std::uint32_t kMaxNodes = 13;

StateIndex pack_state(const ColorState& state);
ColorState unpack_state(StateIndex index, std::uint32_t n);

// Successor distribution of one synchronous round: the product law over
// uncolored nodes that have at least one colored out-neighbor, with
// per-node probabilities |Γ+∩R|/d+, |Γ+∩B|/d+, |Γ+∩U|/d+. Entries are
// sorted by state index; probabilities sum to 1.
std::vector<std::pair<StateIndex, double>> transition_distribution(const Graph& g,
                                                                   const ColorState& state);

// Expected red count at absorption. The colored set only grows, so states
// order topologically by colored count and the absorption system solves
// exactly by memoized back-substitution, no iteration needed.
double exact_expected_red(const Graph& g, const ColorState& state);

// Expected number of rounds until a stable state.
double exact_expected_convergence_time(const Graph& g, const ColorState& state);

// exact_expected_red after recoloring A red. A must avoid blue nodes.
double exact_F(const Graph& g, const ColorState& state, std::span<const NodeId> seeds);

// Exhaustive argmax of exact_F over seed sets of size min(k, #uncolored)
// drawn from the uncolored nodes; ties go to the lexicographically
// smallest set.
std::pair<std::vector<NodeId>, double> exact_best_seed(const Graph& g, const ColorState& state,
                                                       std::uint32_t k);

// Reachable-state enumeration from an initial state, for inspection and
// invariant checks. Stable states are absorbing.
class MarkovModel {
public:
    MarkovModel(const Graph& g, const ColorState& initial);

    const std::vector<StateIndex>& states() const { return states_; }  // BFS order
    const std::vector<std::pair<StateIndex, double>>& successors(StateIndex s) const;
    bool stable(StateIndex s) const;
    double expected_red() const;
    double expected_convergence_time() const;

private:
    const Graph* g_;
    StateIndex initial_;
    std::vector<StateIndex> states_;
    std::unordered_map<StateIndex, std::vector<std::pair<StateIndex, double>>> successors_;
    std::unordered_map<StateIndex, bool> stable_;
};

}  // namespace randpick::exact
