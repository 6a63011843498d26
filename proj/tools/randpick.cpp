#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "randpick/bench.hpp"
#include "randpick/centrality.hpp"
#include "randpick/dynamics.hpp"
#include "randpick/errors.hpp"
#include "randpick/exact.hpp"
#include "randpick/graph.hpp"
#include "randpick/graph_gen.hpp"
#include "randpick/io.hpp"
#include "randpick/rng.hpp"
#include "randpick/seeding.hpp"

using json = nlohmann::ordered_json;
using namespace randpick;

namespace {

constexpr std::uint64_t kStreamBlueDraw = 0xb0;

struct GraphOpts {
    std::string path;
    bool undirected = false;
};

struct StateOpts {
    std::string path;
    std::uint32_t b0 = 0;
};

void add_graph_opts(CLI::App* sub, GraphOpts& opts) {
    sub->add_option("--graph", opts.path, "edge-list file, one 'u v' pair per line")
        ->required();
    sub->add_flag("--undirected", opts.undirected, "treat edges as undirected");
}

void add_state_opts(CLI::App* sub, StateOpts& opts) {
    auto* state = sub->add_option("--state", opts.path, "initial-state file (red/blue lines)");
    sub->add_option("--b0", opts.b0, "draw this many blue nodes uniformly (needs --seed)")
        ->excludes(state);
}

io::LoadedGraph load(const GraphOpts& opts) {
    return io::load_edge_list(opts.path, opts.undirected);
}

ColorState make_state(const io::LoadedGraph& lg, const StateOpts& opts, bool b0_given,
                      std::uint64_t seed) {
    if (!opts.path.empty()) return io::load_state(opts.path, lg);
    ColorState state(lg.graph.n());
    if (b0_given) {
        rng::SplitMix64 gen(rng::derive(seed, kStreamBlueDraw));
        for (NodeId v : rng::sample_without_replacement(lg.graph.n(), opts.b0, gen))
            state.set_color(v, Color::Blue);
    }
    return state;
}

// Primary output goes to --out when given, stdout otherwise.
void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << text;
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

void require_seed(const CLI::App* sub, const std::string& why) {
    if (!sub->count("--seed")) throw CLI::RequiredError("--seed (" + why + ")");
}

json label_array(const io::LoadedGraph& lg, const std::vector<NodeId>& nodes) {
    json arr = json::array();
    for (NodeId v : nodes) arr.push_back(lg.to_label(v));
    return arr;
}

json colored_labels(const io::LoadedGraph& lg, const ColorState& state, Color c) {
    json arr = json::array();
    for (NodeId v = 0; v < state.n(); ++v)
        if (state.color(v) == c) arr.push_back(lg.to_label(v));
    return arr;
}

std::string trajectory_csv(const std::vector<std::array<std::uint32_t, 3>>& trajectory) {
    std::ostringstream out;
    out << "round,red,blue,uncolored\n";
    for (std::size_t t = 0; t < trajectory.size(); ++t)
        out << t << ',' << trajectory[t][0] << ',' << trajectory[t][1] << ','
            << trajectory[t][2] << '\n';
    return out.str();
}

int cmd_gen(const std::string& kind, std::uint32_t n, std::uint32_t m_attach,
            std::uint64_t seed, bool seed_given, std::uint32_t cov_elements,
            std::uint32_t cov_k, double cov_eps, const std::string& cov_subsets,
            const std::string& out_path, const std::string& state_out) {
    Graph graph;
    ColorState state(1);
    bool have_state = false;

    if (kind == "ba") {
        if (!seed_given) throw CLI::RequiredError("--seed (ba generation is random)");
        graph = generate_ba(n, m_attach, seed);
    } else if (kind == "maxcov") {
        std::vector<std::vector<std::uint32_t>> subsets;
        std::stringstream groups(cov_subsets);
        std::string group;
        while (std::getline(groups, group, ';')) {
            std::vector<std::uint32_t> members;
            std::stringstream items(group);
            std::string item;
            while (std::getline(items, item, ','))
                if (!item.empty()) members.push_back(std::uint32_t(std::stoul(item)));
            subsets.push_back(std::move(members));
        }
        if (subsets.empty()) throw std::invalid_argument("--subsets is empty");
        auto inst = max_coverage_transform(subsets, cov_elements, cov_k, cov_eps);
        std::cout << "subsets=" << inst.num_subsets << " elements=" << inst.num_elements
                  << " leaves_per_element=" << inst.leaves_per_element
                  << " budget=" << inst.budget << "\n";
        graph = std::move(inst.graph);
    } else {
        ConstructionKind ck;
        if (kind == "star") ck = ConstructionKind::Star;
        else if (kind == "bipartite") ck = ConstructionKind::BipartiteTightness;
        else if (kind == "pathback") ck = ConstructionKind::PathBackedges;
        else if (kind == "mtight") ck = ConstructionKind::MTightness;
        else throw std::invalid_argument("unknown kind '" + kind + "'");
        if (kind == "star" && !seed_given)
            throw CLI::RequiredError("--seed (the blue leaves are random)");
        auto c = generate_construction(ck, n, seed);
        graph = std::move(c.graph);
        state = std::move(c.state);
        have_state = true;
    }

    io::save_edge_list(out_path, graph);
    std::cout << "kind=" << kind << " n=" << graph.n() << " m=" << graph.m()
              << " undirected=" << int(graph.undirected()) << " out=" << out_path << "\n";
    if (!state_out.empty()) {
        if (!have_state) throw std::invalid_argument("kind '" + kind + "' has no canonical state");
        io::save_state(state_out, state, io::wrap_generated(std::move(graph)));
    }
    return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"random-pick diffusion: simulation, seeding, exact oracles, benchmarks"};
    app.require_subcommand(0, 1);
    app.set_config("--config", "", "read options from a config file");
    app.fallthrough(false);
    bool dump_config = false;
    app.add_flag("--dump-config", dump_config,
                 "print the parsed configuration (reusable via --config) and exit")
        ->configurable(false);

    std::string format = "csv";
    std::uint64_t seed = 0;
    std::uint64_t max_rounds = 0;
    int workers = 1;
    std::string out_path;

    auto add_common = [&](CLI::App* sub, bool with_workers = true) {
        sub->configurable();
        sub->add_flag("--dump-config", dump_config,
                      "print the parsed configuration (reusable via --config) and exit")
            ->configurable(false);
        sub->add_option("--seed", seed, "master seed; required for stochastic commands");
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", out_path, "primary output file (stdout when omitted)");
        sub->add_option("--max-rounds", max_rounds,
                        "simulation round cap (0 = 10x the theoretical bound)");
        if (with_workers)
            sub->add_option("--workers", workers, "worker threads (results are independent)")
                ->check(CLI::PositiveNumber);
    };

    // gen
    auto* gen = app.add_subcommand("gen", "generate a benchmark graph family");
    std::string gen_kind;
    std::uint32_t gen_n = 0, gen_m = 2, cov_elements = 0, cov_k = 1;
    double cov_eps = 1.0;
    std::string cov_subsets, gen_state_out;
    gen->add_option("kind", gen_kind, "ba|star|bipartite|pathback|mtight|maxcov")
        ->required()
        ->check(CLI::IsMember({"ba", "star", "bipartite", "pathback", "mtight", "maxcov"}));
    gen->add_option("--n", gen_n, "node count");
    gen->add_option("--m", gen_m, "ba: edges attached per new node");
    gen->add_option("--elements", cov_elements, "maxcov: number of elements");
    gen->add_option("--k", cov_k, "maxcov: coverage budget");
    gen->add_option("--eps", cov_eps, "maxcov: approximation slack in (0,1]");
    gen->add_option("--subsets", cov_subsets,
                    "maxcov: ';'-separated subsets of ','-separated element ids");
    gen->add_option("--state-out", gen_state_out, "write the canonical initial state here");
    add_common(gen, false);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run the pick process once");
    GraphOpts sim_graph;
    StateOpts sim_state;
    std::string sim_profile, sim_state_out, sim_profile_out;
    add_graph_opts(sim, sim_graph);
    add_state_opts(sim, sim_state);
    sim->add_option("--profile", sim_profile, "replay a fixed pick-profile file")
        ->excludes("--b0");
    sim->add_option("--state-out", sim_state_out, "write the final state here");
    sim->add_option("--profile-out", sim_profile_out,
                    "write the pick profile realized by this run");
    add_common(sim, false);

    // select
    auto* sel = app.add_subcommand("select", "choose a red seed set");
    GraphOpts sel_graph;
    StateOpts sel_state;
    std::string sel_algorithm = "greedy";
    std::uint32_t sel_k = 1;
    double sel_epsilon = 0.1;
    std::uint64_t sel_reps = 300;
    bool sel_paper_reps = false;
    add_graph_opts(sel, sel_graph);
    add_state_opts(sel, sel_state);
    sel->add_option("--k", sel_k, "seed budget")->required();
    sel->add_option("--algorithm", sel_algorithm, "selection rule")
        ->check(CLI::IsMember({"greedy", "pagerank", "closeness", "betweenness", "indegree",
                               "outdegree", "community"}));
    sel->add_option("--epsilon", sel_epsilon, "greedy approximation slack");
    sel->add_option("--reps", sel_reps, "Monte Carlo replications per estimate");
    sel->add_flag("--paper-reps", sel_paper_reps,
                  "use the theoretical replication count instead of --reps");
    add_common(sel);

    // compare
    auto* cmp = app.add_subcommand("compare", "paired seeding-algorithm experiment");
    GraphOpts cmp_graph;
    std::uint32_t cmp_b0 = 0;
    std::vector<std::uint32_t> cmp_k{1};
    std::vector<std::string> cmp_algorithms;
    std::uint32_t cmp_trials = 300;
    std::uint64_t cmp_reps = 300;
    double cmp_epsilon = 0.1;
    add_graph_opts(cmp, cmp_graph);
    cmp->add_option("--b0", cmp_b0, "blue nodes drawn per trial")->required();
    cmp->add_option("--k", cmp_k, "seed budgets")->delimiter(',');
    cmp->add_option("--algorithms", cmp_algorithms,
                    "subset of greedy,pagerank,closeness,betweenness,indegree,outdegree,community")
        ->delimiter(',');
    cmp->add_option("--trials", cmp_trials, "independent trials");
    cmp->add_option("--reps", cmp_reps, "greedy replications per estimate");
    cmp->add_option("--epsilon", cmp_epsilon, "greedy approximation slack");
    add_common(cmp);

    // convbench
    auto* conv = app.add_subcommand("convbench", "per-node convergence-time experiment");
    GraphOpts conv_graph;
    std::uint64_t conv_trials = 300;
    double conv_beta = 0.1;
    add_graph_opts(conv, conv_graph);
    conv->add_option("--trials", conv_trials, "runs per start node");
    conv->add_option("--beta", conv_beta, "Markov-bound parameter in (0,1)");
    add_common(conv);

    // qbench
    auto* qb = app.add_subcommand("qbench", "convergence time vs q-random density");
    GraphOpts qb_graph;
    std::vector<double> qb_q;
    std::uint64_t qb_trials = 300;
    add_graph_opts(qb, qb_graph);
    qb->add_option("--q", qb_q, "coloring probabilities, each in (0,1)")
        ->required()
        ->delimiter(',');
    qb->add_option("--trials", qb_trials, "states drawn per q");
    add_common(qb);

    // exact
    auto* ex = app.add_subcommand("exact", "exact small-instance oracles (n <= 13)");
    GraphOpts ex_graph;
    StateOpts ex_state;
    std::vector<std::int64_t> ex_seeds;
    std::uint32_t ex_k = 0;
    bool ex_time = false;
    add_graph_opts(ex, ex_graph);
    add_state_opts(ex, ex_state);
    auto* ex_seeds_opt =
        ex->add_option("--seeds", ex_seeds, "node labels to recolor red before solving")
            ->delimiter(',');
    auto* ex_k_opt =
        ex->add_option("--k", ex_k, "enumerate the best seed set of this size")
            ->excludes(ex_seeds_opt);
    ex->add_flag("--time", ex_time, "expected rounds to stability instead of expected reds")
        ->excludes(ex_seeds_opt)
        ->excludes(ex_k_opt);
    add_common(ex, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (dump_config) {
        std::cout << app.config_to_str(false, false);
        return 0;
    }
    if (app.get_subcommands().empty()) {
        std::cout << app.help();
        return 0;
    }

    const std::uint64_t cap_or = max_rounds;  // 0 means library default

    if (gen->parsed()) {
        if (out_path.empty()) throw CLI::RequiredError("--out");
        return cmd_gen(gen_kind, gen_n, gen_m, seed, gen->count("--seed") > 0, cov_elements,
                       cov_k, cov_eps, cov_subsets, out_path, gen_state_out);
    }

    if (sim->parsed()) {
        auto lg = load(sim_graph);
        const bool b0_given = sim->count("--b0") > 0;
        if (b0_given) require_seed(sim, "random blue draw");
        if (sim_profile.empty()) require_seed(sim, "simulation randomness");
        ColorState initial = make_state(lg, sim_state, b0_given, seed);
        RunResult res;
        if (!sim_profile.empty()) {
            res = replay(lg.graph, initial, io::load_profile(sim_profile, lg));
        } else {
            res = run(lg.graph, initial, seed,
                      cap_or ? cap_or : default_round_cap(lg.graph));
        }
        if (format == "json") {
            json j;
            j["rounds"] = res.rounds;
            j["converged"] = res.converged;
            j["trajectory"] = res.trajectory;
            j["red"] = colored_labels(lg, res.final_state, Color::Red);
            j["blue"] = colored_labels(lg, res.final_state, Color::Blue);
            emit(out_path, render(j));
        } else {
            emit(out_path, trajectory_csv(res.trajectory));
        }
        if (!sim_state_out.empty()) io::save_state(sim_state_out, res.final_state, lg);
        if (!sim_profile_out.empty()) {
            if (sim_profile.empty())
                io::save_profile(sim_profile_out,
                                 sample_profile(lg.graph, res.rounds, seed), lg);
            else
                throw std::invalid_argument("--profile-out needs a seeded run, not a replay");
        }
        std::cerr << "rounds=" << res.rounds << " converged=" << int(res.converged)
                  << " red=" << res.final_state.red_count()
                  << " blue=" << res.final_state.blue_count() << "\n";
        return 0;
    }

    if (sel->parsed()) {
        auto lg = load(sel_graph);
        const bool b0_given = sel->count("--b0") > 0;
        if (b0_given) require_seed(sel, "random blue draw");
        const bool stochastic = sel_algorithm == "greedy" || sel_algorithm == "community";
        if (stochastic) require_seed(sel, sel_algorithm + " selection is randomized");
        ColorState state = make_state(lg, sel_state, b0_given, seed);
        std::vector<NodeId> seeds;
        std::vector<double> estimates;
        json extra;
        if (sel_algorithm == "greedy") {
            GreedyConfig gc;
            gc.k = sel_k;
            gc.epsilon = sel_epsilon;
            gc.reps = sel_reps;
            gc.paper_formula = sel_paper_reps;
            gc.round_cap = cap_or;
            gc.seed = seed;
            gc.workers = workers;
            auto s = greedy_select(lg.graph, state, gc);
            seeds = std::move(s.seeds);
            estimates = std::move(s.step_estimates);
            extra["simulations"] = s.simulations;
            extra["capped_runs"] = s.capped_runs;
            std::cerr << "simulations=" << s.simulations << " capped_runs=" << s.capped_runs
                      << " wall_seconds=" << s.wall_seconds << "\n";
        } else if (sel_algorithm == "community") {
            seeds = community_select(lg.graph, state, sel_k, seed);
        } else {
            seeds = baseline_select(lg.graph, state, sel_k, sel_algorithm);
        }
        if (format == "json") {
            json j;
            j["algorithm"] = sel_algorithm;
            j["k"] = sel_k;
            j["seeds"] = label_array(lg, seeds);
            if (!estimates.empty()) j["step_estimates"] = estimates;
            j.update(extra);
            emit(out_path, render(j));
        } else {
            std::ostringstream csv;
            csv << "step,node,estimate\n";
            for (std::size_t i = 0; i < seeds.size(); ++i)
                csv << (i + 1) << ',' << lg.to_label(seeds[i]) << ','
                    << (i < estimates.size() ? io::format_double(estimates[i]) : "nan") << '\n';
            emit(out_path, csv.str());
        }
        return 0;
    }

    if (cmp->parsed()) {
        require_seed(cmp, "trial draws and greedy estimates");
        auto lg = load(cmp_graph);
        CompareConfig cc;
        cc.b0 = cmp_b0;
        cc.k_values = cmp_k;
        if (cmp_algorithms.empty()) {
            cc.algorithms = {"greedy", "pagerank", "closeness", "betweenness", "outdegree"};
            if (!lg.graph.undirected()) cc.algorithms.push_back("indegree");
            cc.algorithms.push_back("community");
        } else {
            cc.algorithms = cmp_algorithms;
        }
        cc.trials = cmp_trials;
        cc.reps = cmp_reps;
        cc.epsilon = cmp_epsilon;
        cc.round_cap = cap_or;
        cc.seed = seed;
        cc.workers = workers;
        auto rows = compare_experiment(lg.graph, cc);
        if (format == "json") {
            json arr = json::array();
            for (const auto& r : rows)
                arr.push_back({{"algorithm", r.algorithm},
                               {"k", r.k},
                               {"b0", r.b0},
                               {"mean_red_ratio", r.mean_red_ratio},
                               {"std", r.std_red_ratio},
                               {"trials", r.trials},
                               {"capped_runs", r.capped_runs}});
            emit(out_path, render(arr));
        } else {
            std::ostringstream csv;
            csv << "algorithm,k,b0,mean_red_ratio,std,trials,capped_runs\n";
            for (const auto& r : rows)
                csv << r.algorithm << ',' << r.k << ',' << r.b0 << ','
                    << io::format_double(r.mean_red_ratio) << ','
                    << io::format_double(r.std_red_ratio) << ',' << r.trials << ','
                    << r.capped_runs << '\n';
            emit(out_path, csv.str());
        }
        return 0;
    }

    if (conv->parsed()) {
        require_seed(conv, "simulation randomness");
        auto lg = load(conv_graph);
        auto stats = per_node_convergence(lg.graph, conv_trials, seed, cap_or, workers);
        auto report = bound_report(lg.graph, stats.observed_rounds, conv_beta);
        if (format == "json") {
            json j;
            json nodes = json::array();
            for (NodeId v = 0; v < lg.graph.n(); ++v)
                nodes.push_back({{"node", lg.to_label(v)},
                                 {"mean_rounds", stats.node_mean_rounds[v]},
                                 {"unconverged", stats.node_unconverged[v]}});
            j["nodes"] = nodes;
            j["trials"] = stats.trials;
            j["min_mean"] = stats.min_mean;
            j["max_mean"] = stats.max_mean;
            j["avg_mean"] = stats.avg_mean;
            j["unconverged_total"] = stats.unconverged_total;
            j["m"] = stats.m;
            j["bound_directed"] = report.bound_directed;
            j["bound_undirected"] = report.bound_undirected;
            j["bound_m_over_beta"] = report.bound_m_over_beta;
            j["violations_directed"] = report.violations_directed;
            j["violations_undirected"] = report.violations_undirected;
            j["violations_m_over_beta"] = report.violations_m_over_beta;
            emit(out_path, render(j));
        } else {
            std::ostringstream csv;
            csv << "node,mean_rounds,unconverged\n";
            for (NodeId v = 0; v < lg.graph.n(); ++v)
                csv << lg.to_label(v) << ',' << io::format_double(stats.node_mean_rounds[v])
                    << ',' << stats.node_unconverged[v] << '\n';
            emit(out_path, csv.str());
        }
        std::cerr << "min=" << stats.min_mean << " max=" << stats.max_mean
                  << " avg=" << stats.avg_mean
                  << " unconverged=" << stats.unconverged_total
                  << " bound_directed=" << report.bound_directed
                  << " violations=" << report.violations_directed
                  << " m_over_beta=" << report.bound_m_over_beta
                  << " violations_m_over_beta=" << report.violations_m_over_beta << "\n";
        return 0;
    }

    if (qb->parsed()) {
        require_seed(qb, "state draws and simulation randomness");
        auto lg = load(qb_graph);
        auto result = q_sweep(lg.graph, qb_q, qb_trials, seed, cap_or, workers);
        if (format == "json") {
            json j;
            json rows = json::array();
            for (const auto& r : result.rows)
                rows.push_back({{"q", r.q},
                                {"mean_rounds", r.mean_rounds},
                                {"std_rounds", r.std_rounds},
                                {"trials", r.trials},
                                {"unconverged", r.unconverged}});
            j["rows"] = rows;
            j["pearson_r"] = result.pearson_r;
            emit(out_path, render(j));
        } else {
            std::ostringstream csv;
            csv << "q,mean_rounds,std_rounds,trials,unconverged\n";
            for (const auto& r : result.rows)
                csv << io::format_double(r.q) << ',' << io::format_double(r.mean_rounds) << ','
                    << io::format_double(r.std_rounds) << ',' << r.trials << ','
                    << r.unconverged << '\n';
            emit(out_path, csv.str());
        }
        std::cerr << "pearson_r=" << io::format_double(result.pearson_r) << "\n";
        if (std::isnan(result.pearson_r)) {
            std::cerr << "warning: correlation undefined (single q or zero variance)\n";
            return 1;
        }
        return 0;
    }

    if (ex->parsed()) {
        auto lg = load(ex_graph);
        const bool b0_given = ex->count("--b0") > 0;
        if (b0_given) require_seed(ex, "random blue draw");
        ColorState state = make_state(lg, ex_state, b0_given, seed);
        json j;
        std::ostringstream text;
        if (ex->count("--k")) {
            auto [best, value] = exact::exact_best_seed(lg.graph, state, ex_k);
            j["seeds"] = label_array(lg, best);
            j["value"] = value;
            text << "seeds=";
            for (std::size_t i = 0; i < best.size(); ++i)
                text << (i ? " " : "") << lg.to_label(best[i]);
            text << "\nvalue=" << io::format_double(value) << "\n";
        } else if (ex_time) {
            double v = exact::exact_expected_convergence_time(lg.graph, state);
            j["expected_time"] = v;
            text << "expected_time=" << io::format_double(v) << "\n";
        } else {
            std::vector<NodeId> seeds;
            for (std::int64_t label : ex_seeds) seeds.push_back(lg.to_id(label));
            double v = exact::exact_F(lg.graph, state, seeds);
            j["expected_red"] = v;
            text << "expected_red=" << io::format_double(v) << "\n";
        }
        emit(out_path, format == "json" ? render(j) : text.str());
        return 0;
    }

    return 0;
}

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const SizeLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
