#include "randpick/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace randpick::io {

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    return out;
}

bool comment_or_blank(const std::string& line) {
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == '\r') continue;
        return c == '#' || c == '%';
    }
    return true;
}

}  // namespace

NodeId LoadedGraph::to_id(std::int64_t label) const {
    auto it = index.find(label);
    if (it == index.end())
        throw std::invalid_argument("label " + std::to_string(label) + " not in graph");
    return it->second;
}

LoadedGraph wrap_generated(Graph&& g) {
    LoadedGraph lg;
    lg.labels.resize(g.n());
    lg.index.reserve(g.n());
    for (NodeId v = 0; v < g.n(); ++v) {
        lg.labels[v] = v;
        lg.index.emplace(v, v);
    }
    lg.graph = std::move(g);
    return lg;
}

LoadedGraph load_edge_list(const std::string& path, bool undirected) {
    auto in = open_input(path);
    LoadedGraph lg;
    std::vector<Edge> edges;
    std::string line;
    std::size_t lineno = 0;
    auto intern = [&lg](std::int64_t label) -> NodeId {
        auto [it, inserted] = lg.index.emplace(label, NodeId(lg.labels.size()));
        if (inserted) lg.labels.push_back(label);
        return it->second;
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (comment_or_blank(line)) continue;
        std::istringstream ls(line);
        std::int64_t a, b;
        if (!(ls >> a >> b))
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected two integer labels");
        // sequenced interning: argument evaluation order is unspecified
        NodeId u = intern(a);
        NodeId v = intern(b);
        edges.emplace_back(u, v);
    }
    if (lg.labels.empty()) throw std::invalid_argument(path + ": no edges found");
    for (NodeId v = 0; v < lg.labels.size(); ++v)
        if (lg.labels[v] != v) {
            lg.relabeled = true;
            break;
        }
    lg.graph = build_graph(std::uint32_t(lg.labels.size()), edges, undirected);
    return lg;
}

void save_edge_list(const std::string& path, const Graph& g,
                    const std::vector<std::int64_t>* labels) {
    auto out = open_output(path);
    for (auto [u, v] : g.edges()) {
        if (labels)
            out << (*labels)[u] << ' ' << (*labels)[v] << '\n';
        else
            out << u << ' ' << v << '\n';
    }
}

ColorState load_state(const std::string& path, const LoadedGraph& lg) {
    auto in = open_input(path);
    ColorState state(lg.graph.n());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (comment_or_blank(line)) continue;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        Color c;
        if (kind == "red") c = Color::Red;
        else if (kind == "blue") c = Color::Blue;
        else
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected 'red' or 'blue', got '" + kind + "'");
        std::int64_t label;
        while (ls >> label) state.set_color(lg.to_id(label), c);
    }
    return state;
}

void save_state(const std::string& path, const ColorState& state, const LoadedGraph& lg) {
    auto out = open_output(path);
    out << "red";
    for (NodeId v : state.nodes_with(Color::Red)) out << ' ' << lg.to_label(v);
    out << "\nblue";
    for (NodeId v : state.nodes_with(Color::Blue)) out << ' ' << lg.to_label(v);
    out << '\n';
}

PickProfile load_profile(const std::string& path, const LoadedGraph& lg) {
    auto in = open_input(path);
    const Graph& g = lg.graph;
    std::vector<std::vector<std::int32_t>> rows(g.n());
    std::string line;
    std::size_t lineno = 0, horizon = 0;
    std::vector<char> seen(g.n(), 0);
    while (std::getline(in, line)) {
        ++lineno;
        if (comment_or_blank(line)) continue;
        std::istringstream ls(line);
        std::int64_t node_label;
        if (!(ls >> node_label))
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected node label");
        NodeId v = lg.to_id(node_label);
        if (seen[v])
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": duplicate profile row for node " +
                                        std::to_string(node_label));
        seen[v] = 1;
        std::int64_t p;
        while (ls >> p) {
            if (p == PickProfile::kNoPick) {
                rows[v].push_back(PickProfile::kNoPick);
                continue;
            }
            NodeId target = lg.to_id(p);
            if (!g.has_edge(v, target))
                throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": pick " +
                                            std::to_string(p) + " is not an out-neighbor of " +
                                            std::to_string(node_label));
            rows[v].push_back(std::int32_t(target));
        }
        horizon = std::max(horizon, rows[v].size());
    }
    PickProfile profile;
    profile.horizon = horizon;
    profile.picks.assign(g.n(), std::vector<std::int32_t>(horizon, PickProfile::kNoPick));
    for (NodeId v = 0; v < g.n(); ++v)
        for (std::size_t t = 0; t < rows[v].size(); ++t) profile.picks[v][t] = rows[v][t];
    return profile;
}

void save_profile(const std::string& path, const PickProfile& profile, const LoadedGraph& lg) {
    auto out = open_output(path);
    for (NodeId v = 0; v < profile.picks.size(); ++v) {
        out << lg.to_label(v);
        for (std::int32_t p : profile.picks[v]) {
            if (p == PickProfile::kNoPick) out << " -1";
            else out << ' ' << lg.to_label(NodeId(p));
        }
        out << '\n';
    }
}

void save_trajectory_csv(const std::string& path,
                         const std::vector<std::array<std::uint32_t, 3>>& trajectory) {
    auto out = open_output(path);
    out << "round,red,blue,uncolored\n";
    for (std::size_t t = 0; t < trajectory.size(); ++t)
        out << t << ',' << trajectory[t][0] << ',' << trajectory[t][1] << ','
            << trajectory[t][2] << '\n';
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

}  // namespace randpick::io
