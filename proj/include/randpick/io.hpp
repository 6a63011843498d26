#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "randpick/color.hpp"
#include "randpick/dynamics.hpp"
#include "randpick/graph.hpp"

namespace randpick::io {

// A graph plus the label mapping the loader applied. Files may use arbitrary
// integer labels; they are remapped to dense ids in first-seen order.
struct LoadedGraph {
    Graph graph;
    std::vector<std::int64_t> labels;  // id -> original label
    bool relabeled = false;            // false when labels are identity 0..n-1

    NodeId to_id(std::int64_t label) const;
    std::int64_t to_label(NodeId v) const { return labels[v]; }

    std::unordered_map<std::int64_t, NodeId> index;
};

LoadedGraph wrap_generated(Graph&& g);

// One "u v" pair per line; '#' and '%' start comment lines (SNAP/KONECT
// style); blank lines ignored.
LoadedGraph load_edge_list(const std::string& path, bool undirected);

void save_edge_list(const std::string& path, const Graph& g,
                    const std::vector<std::int64_t>* labels = nullptr);

// State file: lines "red <label> <label> ..." and "blue ...". Either line
// may repeat or be absent; unlisted nodes are uncolored.
ColorState load_state(const std::string& path, const LoadedGraph& lg);
void save_state(const std::string& path, const ColorState& state, const LoadedGraph& lg);

// Pick-profile file: per node one line "<label> p1 p2 ... pT" where each
// p is the picked node's label or -1 for no pick. Unlisted nodes get all
// sentinels. Every pick is validated as an out-neighbor.
PickProfile load_profile(const std::string& path, const LoadedGraph& lg);
void save_profile(const std::string& path, const PickProfile& profile, const LoadedGraph& lg);

void save_trajectory_csv(const std::string& path,
                         const std::vector<std::array<std::uint32_t, 3>>& trajectory);

// Fixed decimal-independent formatting so reruns are byte-identical.
std::string format_double(double x);

}  // namespace randpick::io
