// Acceptance harness: one pass/fail line per criterion, nonzero exit on any
// failure. Takes the CLI binary path as argv[1] (used by the determinism
// criterion).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "netdecay/checks.hpp"
#include "netdecay/corpus.hpp"
#include "netdecay/dynamics.hpp"
#include "netdecay/expectation.hpp"
#include "netdecay/io.hpp"
#include "netdecay/network.hpp"
#include "netdecay/optimize.hpp"

using namespace netdecay;
namespace fs = std::filesystem;

namespace {

std::string g_cli_path = "./netdecay";

constexpr double kGuarantee = 1.0 - 1.0 / 2.718281828459045235;

DecayingNetwork criterion_network(std::uint64_t seed) {
    std::size_t n = 5 + seed % 46; // n <= 50
    return random_network(n, 0.2, seed);
}

bool c1_monotonicity(std::string& detail) {
    std::uint64_t checked = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        auto net = criterion_network(seed);
        SimulationConfig cfg;
        cfg.seed = seed;
        cfg.max_steps = 200;
        auto trace = simulate(net, cfg);
        auto rep = check_thm2(trace);
        checked += rep.instances_checked;
        if (!rep.passed) {
            detail = "violation: " + rep.violations.front();
            return false;
        }
        if (!is_decaying(trace.steps())) {
            detail = "seed " + std::to_string(seed) + ": trace is not a decaying history";
            return false;
        }
    }
    detail = std::to_string(checked) + " probability transitions, zero decreases";
    return true;
}

bool c2_thm3(std::string& detail) {
    std::uint64_t instances = 0, equalities = 0;
    int nodes_checked = 0;
    for (const auto& entry : standard_corpus(2024)) {
        for (NodeId w : entry.network.alive_nodes()) {
            if (entry.network.alive_degree(w) > 7) continue;
            auto rep = check_thm3(entry.network, w);
            instances += rep.instances_checked;
            equalities += rep.boundary_equalities;
            ++nodes_checked;
            if (!rep.passed) {
                detail = entry.name + ": " + rep.violations.front();
                return false;
            }
        }
    }
    detail = std::to_string(instances) + " (S,T,v) configurations over " +
             std::to_string(nodes_checked) + " nodes, zero violations, " +
             std::to_string(equalities) + " saturated equalities";
    return true;
}

bool c3_thm1(std::string& detail) {
    std::uint64_t instances = 0;
    for (const auto& entry : standard_corpus(2024)) {
        for (NodeId w : entry.network.alive_nodes()) {
            if (entry.network.alive_degree(w) > 7) continue;
            auto rep = check_thm1(entry.network, w);
            instances += rep.instances_checked;
            if (!rep.passed) {
                detail = entry.name + ": " + rep.violations.front();
                return false;
            }
        }
    }
    detail = std::to_string(instances) + " configurations, all marginals equal";
    return true;
}

bool c4_lemmas(std::string& detail) {
    auto sums = check_sum_order(random_nested_pairs(91, 10000, 20));
    auto products = check_product_order(random_nested_pairs(92, 10000, 20));
    if (!sums.passed) {
        detail = "lemma1: " + sums.violations.front();
        return false;
    }
    if (!products.passed) {
        detail = "lemma2: " + products.violations.front();
        return false;
    }
    detail = "10000 nested pairs per lemma, zero order violations";
    return true;
}

bool c5_greedy_guarantee(std::string& detail) {
    int certified = 0;
    double worst = 1.0;
    for (const auto& entry : standard_corpus(2024)) {
        const auto& net = entry.network;
        if (net.alive_node_count() > 8) continue;
        for (int k = 1; k <= 3; ++k) {
            if (static_cast<std::size_t>(k) >= net.alive_node_count()) continue;
            auto sel = greedy_maximize(net, k);
            certify(net, sel);
            double ratio = sel.certificate->ratio;
            worst = std::min(worst, ratio);
            ++certified;
            if (ratio < kGuarantee - 1e-12) {
                detail = entry.name + " k=" + std::to_string(k) + ": ratio " +
                         std::to_string(ratio);
                return false;
            }
        }
    }
    std::ostringstream os;
    os << certified << " certified instances, worst ratio " << worst << " >= "
       << kGuarantee;
    detail = os.str();
    return true;
}

bool c6_edge_loss_sampling(std::string& detail) {
    const int runs = 100000;
    double worst_sigmas = 0.0;
    for (std::uint64_t g = 0; g < 10; ++g) {
        auto net = random_network(10 + g * 4, 0.2, 7000 + g);
        double analytic = expected_edge_loss_one_step(net);
        double sum = 0.0, sum_sq = 0.0;
        for (int r = 0; r < runs; ++r) {
            DecayingNetwork copy = net;
            auto rec = step(copy, 100000 + g * runs + static_cast<std::uint64_t>(r));
            double x = static_cast<double>(rec.removed_edges.size());
            sum += x;
            sum_sq += x * x;
        }
        double mean = sum / runs;
        double var = sum_sq / runs - mean * mean;
        double se = std::sqrt(var / runs);
        double sigmas = std::abs(analytic - mean) / se;
        worst_sigmas = std::max(worst_sigmas, sigmas);
        if (sigmas >= 3.0) {
            detail = "network " + std::to_string(g) + ": analytic " +
                     std::to_string(analytic) + " vs MC " + std::to_string(mean) + " (" +
                     std::to_string(sigmas) + " SE)";
            return false;
        }
    }
    std::ostringstream os;
    os << "10 networks x " << runs << " one-step runs, worst deviation " << worst_sigmas
       << " SE";
    detail = os.str();
    return true;
}

bool c7_edge_loss_identity(std::string& detail) {
    long steps_checked = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        auto net = criterion_network(seed);
        SimulationConfig cfg;
        cfg.seed = seed;
        cfg.max_steps = 200;
        auto trace = simulate(net, cfg);
        const auto& fin = trace.final_network;
        for (const auto& rec : trace.steps()) {
            auto before = fin.snapshot_at(rec.step - 1);
            long formula = realized_edge_loss(rec, before);
            if (formula != static_cast<long>(rec.removed_edges.size())) {
                detail = "seed " + std::to_string(seed) + " step " +
                         std::to_string(rec.step);
                return false;
            }
            ++steps_checked;
        }
    }
    detail = std::to_string(steps_checked) + " recorded steps, degree-sum formula exact";
    return true;
}

bool c8_forced_leave(std::string& detail) {
    std::vector<Edge> edges{{0, 1, 0.3}, {0, 2, 0.5}, {0, 3, 0.7}, {0, 4, 0.9}};
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto net = build_network(edges, InitialProbabilitySpec::constant_prob(0.01), seed);
        SimulationConfig cfg;
        cfg.seed = seed;
        cfg.max_steps = 3;
        cfg.forced_leavers[1] = {1, 2, 3, 4};
        auto trace = simulate(net, cfg);
        const auto& fin = trace.final_network;
        const auto& lt = fin.state(0).leave_time;
        if (lt && *lt == 1) continue; // the center itself drew its 1% leave
        bool saturated = false;
        for (const auto& [w, pi] : trace.steps()[0].prob_snapshot) {
            if (w == 0) saturated = pi == 1.0;
        }
        if (!saturated) {
            detail = "seed " + std::to_string(seed) + ": center pi != 1 after step 1";
            return false;
        }
        if (!lt || *lt != 2) {
            detail = "seed " + std::to_string(seed) + ": center did not leave at step 2";
            return false;
        }
    }
    detail = "100 seeds: xi = 1 saturates the survivor and it exits next step";
    return true;
}

bool c9_expected_leavers(std::string& detail) {
    const int runs = 100000;
    double worst_sigmas = 0.0;
    for (std::uint64_t g = 0; g < 10; ++g) {
        auto net = random_network(8 + g * 4, 0.25, 8800 + g);
        double analytic = expected_leavers(net);
        double variance = 0.0;
        for (NodeId w : net.alive_nodes()) {
            variance += net.leave_prob(w) * (1.0 - net.leave_prob(w));
        }
        double sigma = std::sqrt(variance / runs);
        long total = 0;
        for (int r = 0; r < runs; ++r) {
            DecayingNetwork copy = net;
            auto rec = step(copy, 500000 + g * runs + static_cast<std::uint64_t>(r));
            total += static_cast<long>(rec.leavers.size());
        }
        double mean = static_cast<double>(total) / runs;
        double sigmas = std::abs(mean - analytic) / sigma;
        worst_sigmas = std::max(worst_sigmas, sigmas);
        if (sigmas >= 3.0) {
            detail = "network " + std::to_string(g) + ": sum(pi) " +
                     std::to_string(analytic) + " vs MC " + std::to_string(mean) + " (" +
                     std::to_string(sigmas) + " sigma)";
            return false;
        }
    }
    std::ostringstream os;
    os << "10 networks, worst deviation " << worst_sigmas << " sigma";
    detail = os.str();
    return true;
}

struct TempTree {
    fs::path path;
    explicit TempTree(const std::string& tag) {
        path = fs::temp_directory_path() /
               ("netdecay_accept_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempTree() { fs::remove_all(path); }
};

int run_cli(const std::string& args) {
    std::string cmd = g_cli_path + " " + args + " >/dev/null 2>&1";
    return std::system(cmd.c_str());
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool c10_cli_determinism(std::string& detail) {
    TempTree tree("c10");
    auto edges = gnp_edges(14, 0.3, 314);
    fs::path graph = tree.path / "g.txt";
    save_edge_list(graph, edges);

    struct Invocation {
        std::string name;
        std::string args; // {OUT} substituted per repetition
        std::vector<std::string> files;
        int repetitions;
    };
    std::vector<Invocation> invocations = {
        {"simulate",
         "simulate --edges " + graph.string() +
             " --pi0 uniform:0.1:0.7 --steps 60 --seed 9 --out {OUT}",
         {"manifest.json", "steps.csv", "probs.csv", "leavers.csv", "removed_edges.csv",
          "edges.txt", "pi0.txt"},
         20},
        {"simulate-ensemble",
         "simulate --edges " + graph.string() +
             " --pi0 const:0.3 --steps 40 --runs 16 --seed 4 --out {OUT}",
         {"manifest.json", "aggregate.csv"},
         20},
        {"predict",
         "predict --edges " + graph.string() +
             " --pi0 const:0.25 --horizon 6 --runs 500 --seed 3 --out {OUT}/report.csv",
         {"report.csv"},
         20},
        {"metrics",
         "metrics --edges " + graph.string() +
             " --pi0 uniform:0.2:0.8 --steps 50 --seed 12 --out {OUT}/metrics.csv",
         {"metrics.csv"},
         20},
        {"optimize",
         "optimize --edges " + graph.string() +
             " --pi0 uniform:0.2:0.8 --seed 2 --k 3 --mode max --certify --lazy "
             "--format structured --out {OUT}/selection.json",
         {"selection.json"},
         20},
        {"summarize",
         "summarize --input " + graph.string() + "x.values --bins 5 --out {OUT}/sum.csv",
         {"sum.csv"},
         20},
        {"check",
         "check --all --seed 1 --pairs 500 --sims 10 --format structured "
         "--out {OUT}/checks.json",
         {"checks.json"},
         3},
    };
    {
        std::ofstream values(graph.string() + "x.values");
        for (int i = 0; i < 40; ++i) values << (i * 37 % 11) << "\n";
    }

    for (const auto& inv : invocations) {
        std::vector<std::string> blobs;
        for (int rep = 0; rep < inv.repetitions; ++rep) {
            fs::path out = tree.path / (inv.name + "_" + std::to_string(rep));
            fs::create_directories(out);
            std::string args = inv.args;
            auto pos = args.find("{OUT}");
            while (pos != std::string::npos) {
                args.replace(pos, 5, out.string());
                pos = args.find("{OUT}");
            }
            if (run_cli(args) != 0) {
                detail = inv.name + " repetition " + std::to_string(rep) + " failed";
                return false;
            }
            std::string blob;
            for (const auto& f : inv.files) blob += slurp(out / f);
            if (blob.empty()) {
                detail = inv.name + " produced no output";
                return false;
            }
            blobs.push_back(std::move(blob));
        }
        for (std::size_t i = 1; i < blobs.size(); ++i) {
            if (blobs[i] != blobs[0]) {
                detail = inv.name + ": repetition " + std::to_string(i) +
                         " differs byte-wise";
                return false;
            }
        }
    }
    detail = "7 invocation kinds, every repetition byte-identical";
    return true;
}

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    std::function<bool(std::string&)> run;
};

} // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_cli_path = argv[1];

    std::vector<Criterion> criteria = {
        {1, "monotone probabilities over 1000 seeded simulations", 10.0, c1_monotonicity},
        {2, "diminishing marginals of the multi-leaver gain (exhaustive)", 60.0, c2_thm3},
        {3, "flat marginals of the additive gain (exhaustive)", 60.0, c3_thm1},
        {4, "sum/product order preservation on nested probability sets", 60.0, c4_lemmas},
        {5, "greedy within (1-1/e) of the enumerated optimum", 120.0, c5_greedy_guarantee},
        {6, "analytic one-step edge loss vs Monte Carlo", 60.0, c6_edge_loss_sampling},
        {7, "degree-sum edge-loss identity on every recorded step", 60.0,
         c7_edge_loss_identity},
        {8, "forced leave: deserted survivors saturate and exit", 60.0, c8_forced_leave},
        {9, "expected leaver count vs Monte Carlo", 60.0, c9_expected_leavers},
        {10, "byte-identical CLI outputs across repeated seeded invocations", 300.0,
         c10_cli_determinism},
    };

    int failures = 0;
    for (auto& criterion : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (elapsed > criterion.budget_seconds) {
            ok = false;
            detail += " [over budget " + std::to_string(criterion.budget_seconds) + "s]";
        }
        std::ostringstream line;
        line << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion.id << " ("
             << std::fixed << std::setprecision(2) << elapsed << "s): " << criterion.name;
        if (!detail.empty()) line << " -- " << detail;
        std::cout << line.str() << std::endl;
        if (!ok) ++failures;
    }
    if (failures == 0) {
        std::cout << "all 10 acceptance criteria passed" << std::endl;
    } else {
        std::cout << failures << " acceptance criteria failed" << std::endl;
    }
    return failures;
}
