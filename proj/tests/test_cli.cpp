#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <doctest.h>
#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;

struct Cli {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

struct Workspace {
    fs::path dir;
    int serial = 0;
    Workspace() {
        dir = fs::temp_directory_path() / ("randpick_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Workspace() { fs::remove_all(dir); }
    std::string file(const std::string& name) { return (dir / name).string(); }

    Cli run(const std::string& args) {
        const char* bin = std::getenv("RANDPICK_CLI");
        REQUIRE_MESSAGE(bin != nullptr, "RANDPICK_CLI must point at the binary");
        fs::path outp = dir / ("stdout" + std::to_string(serial));
        fs::path errp = dir / ("stderr" + std::to_string(serial));
        ++serial;
        std::string cmd = std::string(bin) + " " + args + " > " + outp.string() +
                          " 2> " + errp.string();
        int rc = std::system(cmd.c_str());
        Cli r;
        r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
        r.out = slurp(outp);
        r.err = slurp(errp);
        return r;
    }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("generation writes graphs and reruns byte-identically") {
    Workspace ws;
    auto g1 = ws.file("a.txt");
    auto g2 = ws.file("b.txt");
    auto r1 = ws.run("gen ba --n 30 --m 2 --seed 9 --out " + g1);
    CHECK(r1.code == 0);
    CHECK(r1.out.find("kind=ba n=30 m=56") != std::string::npos);
    auto r2 = ws.run("gen ba --n 30 --m 2 --seed 9 --out " + g2);
    CHECK(r2.code == 0);
    CHECK(slurp(g1) == slurp(g2));
    CHECK_FALSE(slurp(g1).empty());

    // (n - m) * m edges, one per line
    std::ifstream in(g1);
    int lines = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++lines;
    CHECK(lines == 56);
}

TEST_CASE("generation knows its required options") {
    Workspace ws;
    CHECK(ws.run("gen ba --n 30 --m 2 --seed 9").code == 2);        // --out missing
    CHECK(ws.run("gen ba --n 30 --m 2 --out " + ws.file("x")).code == 2);  // seed needed
    CHECK(ws.run("gen nosuch --n 5 --out " + ws.file("x")).code == 2);
    // deterministic families do not need a seed
    CHECK(ws.run("gen pathback --n 6 --out " + ws.file("p.txt")).code == 0);
    CHECK(ws.run("gen mtight --n 8 --out " + ws.file("m.txt") +
                 " --state-out " + ws.file("m_state.txt")).code == 0);
    CHECK(slurp(ws.file("m_state.txt")).find("red 0") != std::string::npos);
}

TEST_CASE("simulation runs, replays, and round-trips state") {
    Workspace ws;
    auto graph = ws.file("g.txt");
    auto state = ws.file("s.txt");
    REQUIRE(ws.run("gen star --n 9 --seed 4 --out " + graph +
                   " --state-out " + state).code == 0);

    auto traj = ws.file("t.csv");
    auto fin = ws.file("final.txt");
    auto prof = ws.file("prof.txt");
    auto res = ws.run("simulate --graph " + graph + " --undirected --state " + state +
                      " --seed 11 --out " + traj + " --state-out " + fin +
                      " --profile-out " + prof);
    CHECK(res.code == 0);
    CHECK(res.err.find("rounds=") != std::string::npos);
    CHECK(slurp(traj).rfind("round,red,blue,uncolored\n", 0) == 0);

    // replaying the recorded profile reproduces the run exactly
    auto fin2 = ws.file("final2.txt");
    auto replay = ws.run("simulate --graph " + graph + " --undirected --state " + state +
                         " --profile " + prof + " --out " + ws.file("t2.csv") +
                         " --state-out " + fin2);
    CHECK(replay.code == 0);
    CHECK(slurp(fin2) == slurp(fin));
    CHECK(slurp(ws.file("t2.csv")) == slurp(traj));

    // a replay has no seed to record picks from
    CHECK(ws.run("simulate --graph " + graph + " --undirected --state " + state +
                 " --profile " + prof + " --profile-out " + ws.file("nope")).code == 2);
}

TEST_CASE("simulation emits parseable json") {
    Workspace ws;
    auto graph = ws.file("g.txt");
    REQUIRE(ws.run("gen mtight --n 8 --out " + graph + " --state-out " +
                   ws.file("s.txt")).code == 0);
    auto res = ws.run("simulate --graph " + graph + " --state " + ws.file("s.txt") +
                      " --seed 2 --format json");
    CHECK(res.code == 0);
    auto j = nlohmann::json::parse(res.out);
    CHECK(j["converged"].get<bool>());
    CHECK(j["rounds"].get<std::uint64_t>() >= 1);
    CHECK(j["trajectory"].is_array());
    CHECK(j["red"].size() + j["blue"].size() <= 8);
}

TEST_CASE("selection outputs one row per step") {
    Workspace ws;
    auto graph = ws.file("g.txt");
    REQUIRE(ws.run("gen ba --n 25 --m 2 --seed 6 --out " + graph).code == 0);
    auto res = ws.run("select --graph " + graph + " --undirected --k 2 --seed 3 "
                      "--algorithm greedy --reps 30");
    CHECK(res.code == 0);
    CHECK(res.out.rfind("step,node,estimate\n", 0) == 0);
    CHECK(std::count(res.out.begin(), res.out.end(), '\n') == 3);
    auto again = ws.run("select --graph " + graph + " --undirected --k 2 --seed 3 "
                        "--algorithm greedy --reps 30");
    CHECK(again.out == res.out);

    auto base = ws.run("select --graph " + graph + " --undirected --k 2 "
                       "--algorithm outdegree");
    CHECK(base.code == 0);
    CHECK(base.out.find("nan") != std::string::npos);  // no estimates for baselines

    auto js = ws.run("select --graph " + graph + " --undirected --k 1 --seed 3 "
                     "--algorithm greedy --reps 20 --format json");
    CHECK(js.code == 0);
    auto j = nlohmann::json::parse(js.out);
    CHECK(j["seeds"].size() == 1);
    CHECK(j["simulations"].get<std::uint64_t>() > 0);
}

TEST_CASE("selection rejects oversized budgets with the infeasible code") {
    Workspace ws;
    auto graph = ws.file("g.txt");
    REQUIRE(ws.run("gen pathback --n 4 --out " + graph).code == 0);
    auto res = ws.run("select --graph " + graph + " --k 9 --seed 1 --algorithm greedy");
    CHECK(res.code == 3);
    CHECK(res.err.find("error:") != std::string::npos);
}

TEST_CASE("comparison emits the full grid") {
    Workspace ws;
    auto graph = ws.file("g.txt");
    REQUIRE(ws.run("gen ba --n 20 --m 2 --seed 8 --out " + graph).code == 0);
    auto res = ws.run("compare --graph " + graph + " --undirected --b0 2 --k 1,2 "
                      "--algorithms outdegree,pagerank --trials 3 --reps 15 --seed 5");
    CHECK(res.code == 0);
    CHECK(res.out.rfind("algorithm,k,b0,mean_red_ratio,std,trials,capped_runs\n", 0) == 0);
    CHECK(std::count(res.out.begin(), res.out.end(), '\n') == 5);
    CHECK(res.out.find("outdegree,1,2,") != std::string::npos);
    CHECK(res.out.find("pagerank,2,2,") != std::string::npos);
}

TEST_CASE("convergence benchmark prints per-node rows and bounds") {
    Workspace ws;
    auto graph = ws.file("g.txt");
    REQUIRE(ws.run("gen ba --n 15 --m 2 --seed 2 --out " + graph).code == 0);
    auto res = ws.run("convbench --graph " + graph + " --undirected --trials 5 --seed 7");
    CHECK(res.code == 0);
    CHECK(res.out.rfind("node,mean_rounds,unconverged\n", 0) == 0);
    CHECK(std::count(res.out.begin(), res.out.end(), '\n') == 16);
    CHECK(res.err.find("min=") != std::string::npos);

    auto js = ws.run("convbench --graph " + graph + " --undirected --trials 5 --seed 7 "
                     "--format json");
    CHECK(js.code == 0);
    auto j = nlohmann::json::parse(js.out);
    CHECK(j["bound_directed"].get<double>() > 0.0);
    CHECK(j["bound_m_over_beta"].get<double>() > 0.0);
    CHECK(j["nodes"].size() == 15);
}

TEST_CASE("density benchmark reports correlation and flags degenerate sweeps") {
    Workspace ws;
    auto graph = ws.file("g.txt");
    REQUIRE(ws.run("gen ba --n 40 --m 2 --seed 3 --out " + graph).code == 0);
    auto res = ws.run("qbench --graph " + graph + " --undirected --q 0.1,0.3,0.5 "
                      "--trials 10 --seed 4");
    CHECK(res.code == 0);
    CHECK(res.out.rfind("q,mean_rounds,std_rounds,trials,unconverged\n", 0) == 0);
    CHECK(res.err.find("pearson_r=") != std::string::npos);

    auto degen = ws.run("qbench --graph " + graph + " --undirected --q 0.2 "
                        "--trials 5 --seed 4");
    CHECK(degen.code == 1);
    CHECK(degen.err.find("warning") != std::string::npos);
}

TEST_CASE("exact oracle handles all three queries and the size gate") {
    Workspace ws;
    auto graph = ws.file("g.txt");
    std::ofstream(graph) << "0 1\n0 2\n";
    std::ofstream(ws.file("s.txt")) << "blue 2\n";

    auto f = ws.run("exact --graph " + graph + " --state " + ws.file("s.txt") +
                    " --seeds 1");
    CHECK(f.code == 0);
    CHECK(f.out.find("expected_red=1.5") != std::string::npos);

    auto t = ws.run("exact --graph " + graph + " --time");
    CHECK(t.code == 0);
    CHECK(t.out.find("expected_time=0") != std::string::npos);  // blank is stable

    auto k = ws.run("exact --graph " + graph + " --k 1 --format json");
    CHECK(k.code == 0);
    auto j = nlohmann::json::parse(k.out);
    CHECK(j["seeds"].is_array());
    CHECK(j["value"].get<double>() > 0.0);

    std::ofstream big(ws.file("big.txt"));
    for (int v = 0; v + 1 < 14; ++v) big << v << ' ' << v + 1 << '\n';
    big.close();
    CHECK(ws.run("exact --graph " + ws.file("big.txt") + " --time").code == 4);
}

TEST_CASE("config files round-trip through dump and reuse") {
    Workspace ws;
    auto graph = ws.file("g.txt");
    auto cfg = ws.file("run.ini");
    auto dump = ws.run("gen ba --n 25 --m 2 --seed 12 --out " + graph + " --dump-config");
    CHECK(dump.code == 0);
    CHECK(dump.out.find("[gen]") != std::string::npos);
    CHECK(slurp(graph).empty());  // dumping replaces execution
    std::ofstream(cfg) << dump.out;

    auto redo = ws.run("--config " + cfg);
    CHECK(redo.code == 0);
    auto from_config = slurp(graph);
    CHECK_FALSE(from_config.empty());

    auto direct = ws.run("gen ba --n 25 --m 2 --seed 12 --out " + graph);
    CHECK(direct.code == 0);
    CHECK(slurp(graph) == from_config);
}

TEST_CASE("argument errors use the parse exit code") {
    Workspace ws;
    CHECK(ws.run("simulate").code == 2);                       // --graph missing
    CHECK(ws.run("frobnicate").code == 2);                     // unknown command
    CHECK(ws.run("--help").code == 0);
    CHECK(ws.run("gen --help").code == 0);
    auto graph = ws.file("g.txt");
    REQUIRE(ws.run("gen pathback --n 4 --out " + graph).code == 0);
    // --b0 needs a seed
    CHECK(ws.run("simulate --graph " + graph + " --b0 1").code == 2);
    // --state and --b0 conflict
    std::ofstream(ws.file("s.txt")) << "red 0\n";
    CHECK(ws.run("simulate --graph " + graph + " --state " + ws.file("s.txt") +
                 " --b0 1 --seed 1").code == 2);
}

}
