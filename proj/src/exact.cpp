#include "randpick/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "randpick/errors.hpp"

namespace randpick::exact {

namespace {

constexpr std::uint32_t kPow3[kMaxNodes + 1] = {1,     3,      9,      27,     81,
                                                243,   729,    2187,   6561,   19683,
                                                59049, 177147, 531441, 1594323};

void check_size(const Graph& g) {
    if (g.n() > kMaxNodes)
        throw SizeLimitError("exact oracles support at most " + std::to_string(kMaxNodes) +
                             " nodes, got " + std::to_string(g.n()));
}

std::uint8_t digit(StateIndex s, NodeId v) { return (s / kPow3[v]) % 3; }

// One updatable node: uncolored, out-edges, and a colored out-neighbor.
struct ActiveNode {
    NodeId v;
    double p_red;
    double p_blue;
    double p_stay;
};

// Active nodes of the packed state, in node order.
std::vector<ActiveNode> active_nodes(const Graph& g, StateIndex s) {
    std::vector<ActiveNode> active;
    for (NodeId v = 0; v < g.n(); ++v) {
        if (digit(s, v) != 0) continue;
        auto nbrs = g.out_neighbors(v);
        if (nbrs.empty()) continue;
        std::uint32_t reds = 0, blues = 0;
        for (NodeId w : nbrs) {
            std::uint8_t dw = digit(s, w);
            reds += dw == 1;
            blues += dw == 2;
        }
        if (reds + blues == 0) continue;
        double d = double(nbrs.size());
        active.push_back({v, reds / d, blues / d, (nbrs.size() - reds - blues) / d});
    }
    return active;
}

template <typename Fn>
void product_rec(const std::vector<ActiveNode>& active, std::size_t i, StateIndex state,
                 double p, StateIndex base, double& p_self, Fn&& fn) {
    if (i == active.size()) {
        if (state == base) p_self += p;
        else fn(state, p);
        return;
    }
    const ActiveNode& a = active[i];
    if (a.p_stay > 0) product_rec(active, i + 1, state, p * a.p_stay, base, p_self, fn);
    if (a.p_red > 0)
        product_rec(active, i + 1, state + kPow3[a.v], p * a.p_red, base, p_self, fn);
    if (a.p_blue > 0)
        product_rec(active, i + 1, state + 2 * kPow3[a.v], p * a.p_blue, base, p_self, fn);
}

// Applies fn(successor, probability) for every branch of the product law
// that changes the state; p_self receives the total stay-put probability.
template <typename Fn>
void for_each_successor(const std::vector<ActiveNode>& active, StateIndex base, double& p_self,
                        Fn&& fn) {
    p_self = 0.0;
    product_rec(active, 0, base, 1.0, base, p_self, fn);
}

struct Solver {
    const Graph& g;
    std::vector<double> memo;

    explicit Solver(const Graph& graph)
        : g(graph), memo(kPow3[graph.n()], std::numeric_limits<double>::quiet_NaN()) {}

    double red_count(StateIndex s) const {
        double c = 0;
        for (NodeId v = 0; v < g.n(); ++v) c += digit(s, v) == 1;
        return c;
    }

    // expected value at absorption; `timed` solves hitting time instead
    template <bool timed>
    double solve(StateIndex s) {
        if (!std::isnan(memo[s])) return memo[s];
        auto active = active_nodes(g, s);
        double value;
        if (active.empty()) {  // stable
            value = timed ? 0.0 : red_count(s);
        } else {
            double p_self = 0.0, acc = 0.0;
            for_each_successor(active, s, p_self,
                               [&](StateIndex succ, double p) { acc += p * solve<timed>(succ); });
            // every successor has strictly more colored nodes, so the
            // recursion is a topological pass
            value = (acc + (timed ? 1.0 : 0.0)) / (1.0 - p_self);
        }
        memo[s] = value;
        return value;
    }
};

}  // namespace

StateIndex pack_state(const ColorState& state) {
    if (state.n() > kMaxNodes) throw SizeLimitError("state too large to pack");
    StateIndex s = 0;
    for (NodeId v = 0; v < state.n(); ++v)
        s += StateIndex(state.color(v)) * kPow3[v];
    return s;
}

ColorState unpack_state(StateIndex index, std::uint32_t n) {
    if (n > kMaxNodes) throw SizeLimitError("state too large to unpack");
    if (index >= kPow3[n]) throw std::invalid_argument("state index out of range");
    ColorState state(n);
    for (NodeId v = 0; v < n; ++v) {
        std::uint8_t d = (index / kPow3[v]) % 3;
        if (d != 0) state.set_color(v, d == 1 ? Color::Red : Color::Blue);
    }
    return state;
}

std::vector<std::pair<StateIndex, double>> transition_distribution(const Graph& g,
                                                                   const ColorState& state) {
    check_size(g);
    if (state.n() != g.n()) throw std::invalid_argument("state size does not match graph");
    StateIndex base = pack_state(state);
    auto active = active_nodes(g, base);
    std::vector<std::pair<StateIndex, double>> dist;
    double p_self = 0.0;
    for_each_successor(active, base, p_self,
                       [&](StateIndex succ, double p) { dist.emplace_back(succ, p); });
    if (p_self > 0.0) dist.emplace_back(base, p_self);
    std::sort(dist.begin(), dist.end());
    return dist;
}

double exact_expected_red(const Graph& g, const ColorState& state) {
    check_size(g);
    if (state.n() != g.n()) throw std::invalid_argument("state size does not match graph");
    Solver solver(g);
    return solver.solve<false>(pack_state(state));
}

double exact_expected_convergence_time(const Graph& g, const ColorState& state) {
    check_size(g);
    if (state.n() != g.n()) throw std::invalid_argument("state size does not match graph");
    Solver solver(g);
    return solver.solve<true>(pack_state(state));
}

double exact_F(const Graph& g, const ColorState& state, std::span<const NodeId> seeds) {
    ColorState seeded = state;
    for (NodeId v : seeds) {
        if (seeded.color(v) == Color::Blue)
            throw std::invalid_argument("seed node " + std::to_string(v) + " is blue");
        seeded.set_color(v, Color::Red);
    }
    return exact_expected_red(g, seeded);
}

std::pair<std::vector<NodeId>, double> exact_best_seed(const Graph& g, const ColorState& state,
                                                       std::uint32_t k) {
    check_size(g);
    if (state.n() != g.n()) throw std::invalid_argument("state size does not match graph");
    std::vector<NodeId> uncolored = state.nodes_with(Color::Uncolored);
    std::uint32_t m = std::min<std::uint32_t>(k, std::uint32_t(uncolored.size()));

    std::vector<NodeId> best;
    double best_value = -1.0;
    std::vector<std::uint32_t> idx(m);
    for (std::uint32_t i = 0; i < m; ++i) idx[i] = i;
    std::vector<NodeId> candidate(m);
    for (;;) {
        for (std::uint32_t i = 0; i < m; ++i) candidate[i] = uncolored[idx[i]];
        double value = exact_F(g, state, candidate);
        if (value > best_value) {  // lexicographic enumeration keeps first (least) tie
            best_value = value;
            best = candidate;
        }
        if (m == 0) break;
        // next combination in lexicographic order
        std::int32_t pos = std::int32_t(m) - 1;
        while (pos >= 0 && idx[pos] == uncolored.size() - m + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (std::uint32_t i = std::uint32_t(pos) + 1; i < m; ++i) idx[i] = idx[i - 1] + 1;
    }
    return {best, best_value};
}

MarkovModel::MarkovModel(const Graph& g, const ColorState& initial) : g_(&g) {
    check_size(g);
    if (initial.n() != g.n()) throw std::invalid_argument("state size does not match graph");
    initial_ = pack_state(initial);
    std::vector<StateIndex> queue{initial_};
    successors_[initial_];  // mark discovered
    for (std::size_t head = 0; head < queue.size(); ++head) {
        StateIndex s = queue[head];
        auto dist = transition_distribution(g, unpack_state(s, g.n()));
        stable_[s] = dist.size() == 1 && dist[0].first == s;
        for (auto& [succ, p] : dist) {
            if (!successors_.count(succ)) {
                successors_[succ];
                queue.push_back(succ);
            }
        }
        successors_[s] = std::move(dist);
    }
    states_ = queue;
}

const std::vector<std::pair<StateIndex, double>>& MarkovModel::successors(StateIndex s) const {
    auto it = successors_.find(s);
    if (it == successors_.end()) throw std::invalid_argument("state not reachable");
    return it->second;
}

bool MarkovModel::stable(StateIndex s) const {
    auto it = stable_.find(s);
    if (it == stable_.end()) throw std::invalid_argument("state not reachable");
    return it->second;
}

double MarkovModel::expected_red() const {
    return exact_expected_red(*g_, unpack_state(initial_, g_->n()));
}

double MarkovModel::expected_convergence_time() const {
    return exact_expected_convergence_time(*g_, unpack_state(initial_, g_->n()));
}

}  // namespace randpick::exact
