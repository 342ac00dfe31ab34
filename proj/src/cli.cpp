#include "netdecay/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "netdecay/checks.hpp"
#include "netdecay/corpus.hpp"
#include "netdecay/dynamics.hpp"
#include "netdecay/expectation.hpp"
#include "netdecay/io.hpp"
#include "netdecay/metrics.hpp"
#include "netdecay/network.hpp"
#include "netdecay/optimize.hpp"
#include "netdecay/version.hpp"

namespace netdecay::cli {

namespace {

struct CommonInput {
    std::string edges_path;
    std::string pi0_spec = "const:0.1";
    std::uint64_t seed = 0;
};

void add_input_flags(CLI::App* cmd, CommonInput& in) {
    cmd->add_option("--edges", in.edges_path, "edge list file (u v delta per line)")
        ->required();
    cmd->add_option("--pi0", in.pi0_spec,
                    "initial probabilities: const:c | uniform:lo:hi | invdeg:a | file:path")
        ->capture_default_str();
    cmd->add_option("--seed", in.seed, "base seed")->capture_default_str();
}

DecayingNetwork load_network(const CommonInput& in) {
    auto edges = load_edge_list(in.edges_path);
    return build_network(edges, resolve_initial_spec(in.pi0_spec), in.seed);
}

std::string resolved_config(std::initializer_list<std::pair<std::string, std::string>> kv) {
    std::ostringstream os;
    for (const auto& [k, v] : kv) os << k << '=' << v << '\n';
    return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
}

std::uint64_t enumeration_cap_from_env() {
    if (const char* v = std::getenv("NETDECAY_ENUM_CAP")) {
        return std::stoull(v);
    }
    return kDefaultEnumerationCap;
}

nlohmann::json selection_json(const SeedSelection& sel) {
    nlohmann::json j;
    j["mode"] = sel.mode == OptimizeMode::Maximize ? "max" : "min";
    j["budget"] = sel.budget;
    j["chosen"] = sel.chosen;
    j["objective"] = sel.objective;
    j["pick_order"] = sel.pick_order;
    j["marginal_gains"] = sel.marginal_gains;
    j["objective_evaluations"] = sel.objective_evaluations;
    if (sel.certificate) {
        j["certificate"] = {{"optimal_value", sel.certificate->optimal_value},
                            {"ratio", sel.certificate->ratio}};
    } else {
        j["certificate"] = nullptr;
    }
    return j;
}

nlohmann::json report_json(const CheckReport& rep) {
    nlohmann::json j;
    j["claim"] = rep.claim;
    j["instances_checked"] = rep.instances_checked;
    j["violations"] = rep.violations;
    j["passed"] = rep.passed;
    j["boundary_equalities"] = rep.boundary_equalities;
    return j;
}

int cmd_simulate(const CommonInput& in, int steps, int runs, const std::string& out_dir) {
    DecayingNetwork net = load_network(in);
    SimulationConfig cfg;
    cfg.seed = in.seed;
    cfg.max_steps = steps;

    std::string config = resolved_config({{"command", "simulate"},
                                          {"edges", in.edges_path},
                                          {"pi0", in.pi0_spec},
                                          {"runs", std::to_string(runs)},
                                          {"seed", std::to_string(in.seed)},
                                          {"steps", std::to_string(steps)}});

    if (runs == 1) {
        SimulationTrace trace = simulate(net, cfg);
        persist_trace(trace, out_dir, in.edges_path, config);
        return kExitOk;
    }

    EnsembleReport ens = ensemble_stats(net, cfg, runs);
    std::filesystem::create_directories(out_dir);
    std::ostringstream csv;
    csv << "step,mean_alive_nodes,std_alive_nodes,mean_alive_edges,std_alive_edges,"
           "mean_leavers,mean_removed_edges\n";
    for (std::size_t s = 0; s < ens.mean_alive_nodes.size(); ++s) {
        csv << (s + 1) << ',' << format_double(ens.mean_alive_nodes[s]) << ','
            << format_double(ens.std_alive_nodes[s]) << ','
            << format_double(ens.mean_alive_edges[s]) << ','
            << format_double(ens.std_alive_edges[s]) << ','
            << format_double(ens.mean_leavers[s]) << ','
            << format_double(ens.mean_removed_edges[s]) << '\n';
    }
    std::filesystem::path agg = std::filesystem::path(out_dir) / "aggregate.csv";
    {
        std::ofstream out(agg, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + agg.string());
        out << csv.str();
    }
    RunManifest manifest;
    manifest.tool_version = kToolVersion;
    manifest.input_path = in.edges_path;
    manifest.seed = in.seed;
    manifest.config_digest = hex64(fnv1a64(config));
    manifest.outputs.emplace_back("aggregate.csv", file_digest(agg));
    std::ofstream mout(std::filesystem::path(out_dir) / "manifest.json", std::ios::binary);
    mout << manifest.to_json();
    return kExitOk;
}

int cmd_predict(const CommonInput& in, int horizon, int runs, const std::string& format,
                const std::string& out_path) {
    DecayingNetwork net = load_network(in);
    ExpectationReport analytic = expected_edge_loss_horizon(net, horizon);
    ExpectationReport sampled;
    if (runs > 0) sampled = monte_carlo_horizon(net, horizon, runs, in.seed);

    if (format == "structured") {
        nlohmann::json j;
        j["horizon"] = analytic.horizon;
        j["expected_node_loss"] = analytic.expected_node_loss;
        j["expected_edge_loss"] = analytic.expected_edge_loss;
        j["cumulative_node_loss"] = analytic.cumulative_node_loss;
        j["cumulative_edge_loss"] = analytic.cumulative_edge_loss;
        j["expected_leavers_next_step"] = expected_leavers(net);
        if (runs > 0) {
            j["monte_carlo"] = {{"runs", runs},
                                {"node_loss", sampled.expected_node_loss},
                                {"edge_loss", sampled.expected_edge_loss}};
        }
        emit(j.dump(2) + "\n", out_path);
        return kExitOk;
    }

    std::ostringstream csv;
    csv << "step,expected_nodes_lost,expected_edges_lost";
    if (runs > 0) csv << ",mc_nodes_lost,mc_edges_lost";
    csv << '\n';
    for (int s = 0; s < horizon; ++s) {
        csv << (s + 1) << ',' << format_double(analytic.expected_node_loss[s]) << ','
            << format_double(analytic.expected_edge_loss[s]);
        if (runs > 0) {
            csv << ',' << format_double(sampled.expected_node_loss[s]) << ','
                << format_double(sampled.expected_edge_loss[s]);
        }
        csv << '\n';
    }
    csv << "total," << format_double(analytic.cumulative_node_loss) << ','
        << format_double(analytic.cumulative_edge_loss);
    if (runs > 0) {
        csv << ',' << format_double(sampled.cumulative_node_loss) << ','
            << format_double(sampled.cumulative_edge_loss);
    }
    csv << '\n';
    emit(csv.str(), out_path);
    return kExitOk;
}

int cmd_metrics(const CommonInput& in, int steps, int li_window, const std::string& format,
                const std::string& out_path) {
    DecayingNetwork net = load_network(in);
    SimulationConfig cfg;
    cfg.seed = in.seed;
    cfg.max_steps = steps;
    SimulationTrace trace = simulate(net, cfg);

    auto ranking = trace.steps().empty() ? std::vector<InfluenceScore>{}
                                         : influence_ranking(trace, li_window);
    if (format == "structured") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& score : ranking) {
            auto nlr = neighbors_leave_resilience(trace, score.node);
            rows.push_back(
                {{"node", score.node},
                 {"leave_time", *trace.final_network.state(score.node).leave_time},
                 {"li", score.score},
                 {"li_window_end", score.horizon},
                 {"nlr", nlr.score}});
        }
        emit(rows.dump(2) + "\n", out_path);
        return kExitOk;
    }
    std::ostringstream csv;
    csv << "node,leave_time,li,nlr\n";
    for (const auto& score : ranking) {
        auto nlr = neighbors_leave_resilience(trace, score.node);
        csv << score.node << ',' << *trace.final_network.state(score.node).leave_time
            << ',' << score.score << ',' << format_double(nlr.score) << '\n';
    }
    emit(csv.str(), out_path);
    return kExitOk;
}

int cmd_optimize(const CommonInput& in, int k, const std::string& mode, bool certify_flag,
                 bool lazy, const std::string& format, const std::string& out_path) {
    DecayingNetwork net = load_network(in);
    std::uint64_t cap = enumeration_cap_from_env();

    SeedSelection sel;
    if (mode == "max") {
        sel = lazy ? lazy_marginals(net, k) : greedy_maximize(net, k);
    } else {
        sel = greedy_minimize(net, k, cap);
    }
    if (certify_flag) certify(net, sel, cap);

    if (format == "structured") {
        emit(selection_json(sel).dump(2) + "\n", out_path);
        return kExitOk;
    }
    std::ostringstream csv;
    csv << "round,added_node,marginal_gain\n";
    // Enumeration paths carry no per-round gains.
    for (std::size_t r = 0; r < sel.marginal_gains.size() && r < sel.pick_order.size();
         ++r) {
        csv << (r + 1) << ',' << sel.pick_order[r] << ','
            << format_double(sel.marginal_gains[r]) << '\n';
    }
    csv << "objective," << format_double(sel.objective) << ",\n";
    if (sel.certificate) {
        csv << "certificate_optimal," << format_double(sel.certificate->optimal_value)
            << ",\n";
        csv << "certificate_ratio," << format_double(sel.certificate->ratio) << ",\n";
    }
    std::ostringstream ids;
    for (std::size_t i = 0; i < sel.chosen.size(); ++i) {
        if (i) ids << ' ';
        ids << sel.chosen[i];
    }
    csv << "chosen," << ids.str() << ",\n";
    emit(csv.str(), out_path);
    return kExitOk;
}

int cmd_check(std::vector<std::string> claims, std::uint64_t seed, std::size_t pairs,
              int sims, const std::string& trace_dir, const std::string& format,
              const std::string& out_path) {
    std::vector<CheckReport> reports;
    auto want = [&](const std::string& claim) {
        return std::find(claims.begin(), claims.end(), claim) != claims.end();
    };

    if (want("lemma1"))
        reports.push_back(check_sum_order(random_nested_pairs(seed, pairs, 20)));
    if (want("lemma2"))
        reports.push_back(check_product_order(random_nested_pairs(seed + 1, pairs, 20)));

    if (want("thm1") || want("thm3")) {
        CheckReport thm1_total, thm3_total;
        thm1_total.claim = "thm1";
        thm3_total.claim = "thm3";
        for (const CorpusEntry& entry : standard_corpus(seed)) {
            for (NodeId w : entry.network.alive_nodes()) {
                if (entry.network.alive_degree(w) > 7) continue;
                if (want("thm1")) {
                    CheckReport r = check_thm1(entry.network, w);
                    thm1_total.instances_checked += r.instances_checked;
                    for (const auto& v : r.violations)
                        thm1_total.violations.push_back(entry.name + ": " + v);
                    thm1_total.passed = thm1_total.passed && r.passed;
                }
                if (want("thm3")) {
                    CheckReport r = check_thm3(entry.network, w);
                    thm3_total.instances_checked += r.instances_checked;
                    thm3_total.boundary_equalities += r.boundary_equalities;
                    for (const auto& v : r.violations)
                        thm3_total.violations.push_back(entry.name + ": " + v);
                    thm3_total.passed = thm3_total.passed && r.passed;
                }
            }
        }
        if (want("thm1")) reports.push_back(std::move(thm1_total));
        if (want("thm3")) reports.push_back(std::move(thm3_total));
    }

    if (want("thm2")) {
        CheckReport total;
        total.claim = "thm2";
        if (!trace_dir.empty()) {
            SimulationTrace trace = load_trace(trace_dir);
            total = check_thm2(trace);
        } else {
            for (int r = 0; r < sims; ++r) {
                DecayingNetwork net =
                    random_network(5 + static_cast<std::size_t>(r) % 46, 0.2,
                                   seed + static_cast<std::uint64_t>(r));
                SimulationConfig cfg;
                cfg.seed = seed + static_cast<std::uint64_t>(r);
                cfg.max_steps = 100;
                CheckReport rep = check_thm2(simulate(net, cfg));
                total.instances_checked += rep.instances_checked;
                for (const auto& v : rep.violations) total.violations.push_back(v);
                total.passed = total.passed && rep.passed;
            }
        }
        reports.push_back(std::move(total));
    }

    bool all_passed = true;
    std::ostringstream text;
    if (format == "structured") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& rep : reports) {
            arr.push_back(report_json(rep));
            all_passed = all_passed && rep.passed;
        }
        text << arr.dump(2) << "\n";
    } else {
        for (const auto& rep : reports) {
            text << "claim=" << rep.claim << " instances=" << rep.instances_checked
                 << " violations=" << rep.violations.size()
                 << " passed=" << (rep.passed ? "true" : "false");
            if (rep.claim == "thm3")
                text << " boundary_equalities=" << rep.boundary_equalities;
            text << '\n';
            for (const auto& v : rep.violations) text << "  violation: " << v << '\n';
            all_passed = all_passed && rep.passed;
        }
    }
    emit(text.str(), out_path);
    return all_passed ? kExitOk : kExitViolation;
}

int cmd_summarize(const std::string& input, int bins, const std::string& name,
                  const std::string& format, const std::string& out_path) {
    auto values = load_values(input);
    DistributionSummary summary = summarize_distribution(values, bins, name);

    if (format == "structured") {
        nlohmann::json j;
        j["metric"] = summary.metric;
        j["mean"] = summary.mean;
        j["stddev"] = summary.stddev;
        j["population"] = summary.population;
        j["bin_width"] = summary.bin_width;
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& [lo, count] : summary.histogram) {
            rows.push_back({{"bin_lower", lo}, {"count", count}});
        }
        j["histogram"] = rows;
        emit(j.dump(2) + "\n", out_path);
        return kExitOk;
    }
    std::ostringstream csv;
    csv << "# metric=" << summary.metric << " mean=" << format_double(summary.mean)
        << " stddev=" << format_double(summary.stddev)
        << " population=" << summary.population << '\n';
    csv << "bin_lower,bin_upper,count\n";
    for (const auto& [lo, count] : summary.histogram) {
        csv << format_double(lo) << ',' << format_double(lo + summary.bin_width) << ','
            << count << '\n';
    }
    emit(csv.str(), out_path);
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"decaying social network simulator and optimizer", "netdecay"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    // simulate
    CommonInput sim_in;
    int sim_steps = 100;
    int sim_runs = 1;
    std::string sim_out;
    auto* sim = app.add_subcommand("simulate", "run the stochastic decay process");
    add_input_flags(sim, sim_in);
    sim->add_option("--steps", sim_steps, "maximum steps")->capture_default_str();
    sim->add_option("--runs", sim_runs, "ensemble size (1 = persist the single trace)")
        ->capture_default_str();
    sim->add_option("--out", sim_out, "output directory")->required();

    // predict
    CommonInput pre_in;
    int pre_horizon = 10;
    int pre_runs = 0;
    std::string pre_format = "csv";
    std::string pre_out;
    auto* pre = app.add_subcommand("predict", "analytic node/edge loss forecast");
    add_input_flags(pre, pre_in);
    pre->add_option("--horizon", pre_horizon, "steps to project")->capture_default_str();
    pre->add_option("--runs", pre_runs,
                    "Monte Carlo runs reported alongside (0 = analytic only)")
        ->capture_default_str();
    pre->add_option("--format", pre_format, "csv | structured")
        ->check(CLI::IsMember({"csv", "structured"}))
        ->capture_default_str();
    pre->add_option("--out", pre_out, "output file (default stdout)");

    // metrics
    CommonInput met_in;
    int met_steps = 100;
    int met_window = 1;
    std::string met_format = "csv";
    std::string met_out;
    auto* met = app.add_subcommand("metrics", "leave influence and resilience per node");
    add_input_flags(met, met_in);
    met->add_option("--steps", met_steps, "maximum steps")->capture_default_str();
    met->add_option("--li-window", met_window, "LI window length after each leave")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    met->add_option("--format", met_format, "csv | structured")
        ->check(CLI::IsMember({"csv", "structured"}))
        ->capture_default_str();
    met->add_option("--out", met_out, "output file (default stdout)");

    // optimize
    CommonInput opt_in;
    int opt_k = 1;
    std::string opt_mode = "max";
    bool opt_certify = false;
    bool opt_lazy = false;
    std::string opt_format = "structured";
    std::string opt_out;
    auto* opt = app.add_subcommand("optimize", "k-node leave-effect optimization");
    add_input_flags(opt, opt_in);
    opt->add_option("--k", opt_k, "budget")->required()->check(CLI::PositiveNumber);
    opt->add_option("--mode", opt_mode, "max | min")
        ->check(CLI::IsMember({"max", "min"}))
        ->capture_default_str();
    opt->add_flag("--certify", opt_certify, "attach a brute-force optimality certificate");
    opt->add_flag("--lazy", opt_lazy, "use lazy marginal evaluation (max mode)");
    opt->add_option("--format", opt_format, "csv | structured")
        ->check(CLI::IsMember({"csv", "structured"}))
        ->capture_default_str();
    opt->add_option("--out", opt_out, "output file (default stdout)");

    // check
    bool chk_all = false;
    std::vector<std::string> chk_claims;
    std::uint64_t chk_seed = 0;
    std::size_t chk_pairs = 10000;
    int chk_sims = 200;
    std::string chk_trace;
    std::string chk_format = "text";
    std::string chk_out;
    auto* chk = app.add_subcommand("check", "executable verification of the model claims");
    chk->add_flag("--all", chk_all, "run every claim");
    chk->add_option("--claim", chk_claims, "lemma1 | lemma2 | thm1 | thm2 | thm3")
        ->check(CLI::IsMember({"lemma1", "lemma2", "thm1", "thm2", "thm3"}));
    chk->add_option("--seed", chk_seed, "base seed")->capture_default_str();
    chk->add_option("--pairs", chk_pairs, "nested pairs per lemma")->capture_default_str();
    chk->add_option("--sims", chk_sims, "simulations for thm2")->capture_default_str();
    chk->add_option("--trace", chk_trace, "check thm2 against a persisted trace directory");
    chk->add_option("--format", chk_format, "text | structured")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
    chk->add_option("--out", chk_out, "output file (default stdout)");

    // summarize
    std::string sum_input;
    int sum_bins = 10;
    std::string sum_name = "values";
    std::string sum_format = "csv";
    std::string sum_out;
    auto* sum = app.add_subcommand("summarize", "distribution summary of a value file");
    sum->add_option("--input", sum_input, "file with one value per line")->required();
    sum->add_option("--bins", sum_bins, "histogram bins")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sum->add_option("--name", sum_name, "metric name")->capture_default_str();
    sum->add_option("--format", sum_format, "csv | structured")
        ->check(CLI::IsMember({"csv", "structured"}))
        ->capture_default_str();
    sum->add_option("--out", sum_out, "output file (default stdout)");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitError;
    }

    try {
        if (sim->parsed()) return cmd_simulate(sim_in, sim_steps, sim_runs, sim_out);
        if (pre->parsed())
            return cmd_predict(pre_in, pre_horizon, pre_runs, pre_format, pre_out);
        if (met->parsed())
            return cmd_metrics(met_in, met_steps, met_window, met_format, met_out);
        if (opt->parsed())
            return cmd_optimize(opt_in, opt_k, opt_mode, opt_certify, opt_lazy, opt_format,
                                opt_out);
        if (chk->parsed()) {
            if (chk_all) chk_claims = {"lemma1", "lemma2", "thm1", "thm2", "thm3"};
            if (chk_claims.empty())
                throw std::invalid_argument("check needs --all or --claim");
            return cmd_check(chk_claims, chk_seed, chk_pairs, chk_sims, chk_trace,
                             chk_format, chk_out);
        }
        if (sum->parsed())
            return cmd_summarize(sum_input, sum_bins, sum_name, sum_format, sum_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

} // namespace netdecay::cli
