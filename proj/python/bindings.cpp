#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "netdecay/checks.hpp"
#include "netdecay/corpus.hpp"
#include "netdecay/dynamics.hpp"
#include "netdecay/expectation.hpp"
#include "netdecay/io.hpp"
#include "netdecay/metrics.hpp"
#include "netdecay/network.hpp"
#include "netdecay/optimize.hpp"
#include "netdecay/version.hpp"

namespace py = pybind11;
using namespace netdecay;

namespace {

DecayingNetwork build_from_tuples(const std::vector<std::tuple<NodeId, NodeId, double>>& triples,
                                  const std::string& pi0, std::uint64_t seed) {
    std::vector<Edge> edges;
    edges.reserve(triples.size());
    for (const auto& [u, v, d] : triples) edges.emplace_back(u, v, d);
    return build_network(edges, resolve_initial_spec(pi0), seed);
}

SimulationTrace run_simulation(const DecayingNetwork& net, std::uint64_t seed,
                               int max_steps, bool stop_when_empty,
                               const std::map<int, std::vector<NodeId>>& forced) {
    SimulationConfig cfg;
    cfg.seed = seed;
    cfg.max_steps = max_steps;
    cfg.stop_when_empty = stop_when_empty;
    cfg.forced_leavers = forced;
    return simulate(net, cfg);
}

} // namespace

PYBIND11_MODULE(netdecay, m) {
    m.doc() = "probabilistic social-network decay: simulation, analytic loss "
              "prediction, influence metrics and submodular seed optimization";
    m.attr("__version__") = kToolVersion;

    py::class_<Edge>(m, "Edge")
        .def(py::init<NodeId, NodeId, double>())
        .def_readonly("u", &Edge::u)
        .def_readonly("v", &Edge::v)
        .def_readonly("tie_strength", &Edge::tie_strength)
        .def("__repr__", [](const Edge& e) {
            return "Edge(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ", " +
                   format_double(e.tie_strength) + ")";
        });

    py::class_<NodeState>(m, "NodeState")
        .def_readonly("leave_prob", &NodeState::leave_prob)
        .def_readonly("initial_prob", &NodeState::initial_prob)
        .def_readonly("leave_time", &NodeState::leave_time)
        .def_property_readonly("alive", &NodeState::alive);

    py::class_<StepRecord>(m, "StepRecord")
        .def_readonly("step", &StepRecord::step)
        .def_readonly("leavers", &StepRecord::leavers)
        .def_readonly("removed_edges", &StepRecord::removed_edges)
        .def_readonly("prob_snapshot", &StepRecord::prob_snapshot);

    py::class_<DecayingNetwork>(m, "DecayingNetwork")
        .def_property_readonly("time", &DecayingNetwork::time)
        .def_property_readonly("alive_node_count", &DecayingNetwork::alive_node_count)
        .def_property_readonly("alive_edge_count", &DecayingNetwork::alive_edge_count)
        .def_property_readonly("initial_node_count", &DecayingNetwork::initial_node_count)
        .def("is_alive", &DecayingNetwork::is_alive)
        .def("leave_prob", &DecayingNetwork::leave_prob)
        .def("state", &DecayingNetwork::state, py::return_value_policy::copy)
        .def("alive_nodes", &DecayingNetwork::alive_nodes)
        .def("alive_edges", &DecayingNetwork::alive_edges)
        .def("alive_degree", &DecayingNetwork::alive_degree)
        .def("initial_degree", &DecayingNetwork::initial_degree)
        .def("snapshot_at", &DecayingNetwork::snapshot_at)
        .def("history", &DecayingNetwork::history)
        .def("__repr__", [](const DecayingNetwork& n) {
            return "DecayingNetwork(t=" + std::to_string(n.time()) + ", alive=" +
                   std::to_string(n.alive_node_count()) + "/" +
                   std::to_string(n.initial_node_count()) + ")";
        });

    py::class_<SimulationTrace>(m, "SimulationTrace")
        .def_readonly("final_network", &SimulationTrace::final_network)
        .def_readonly("seed", &SimulationTrace::seed)
        .def_property_readonly("steps", &SimulationTrace::steps);

    py::class_<GainResult>(m, "GainResult")
        .def_readonly("node", &GainResult::node)
        .def_readonly("delta", &GainResult::delta)
        .def_readonly("xi", &GainResult::xi)
        .def_readonly("contributing_leavers", &GainResult::contributing_leavers);

    py::class_<ExpectationReport>(m, "ExpectationReport")
        .def_readonly("horizon", &ExpectationReport::horizon)
        .def_readonly("expected_node_loss", &ExpectationReport::expected_node_loss)
        .def_readonly("expected_edge_loss", &ExpectationReport::expected_edge_loss)
        .def_readonly("cumulative_edge_loss", &ExpectationReport::cumulative_edge_loss)
        .def_readonly("cumulative_node_loss", &ExpectationReport::cumulative_node_loss);

    py::class_<InfluenceScore>(m, "InfluenceScore")
        .def_readonly("node", &InfluenceScore::node)
        .def_readonly("horizon", &InfluenceScore::horizon)
        .def_readonly("score", &InfluenceScore::score);

    py::class_<ResilienceScore>(m, "ResilienceScore")
        .def_readonly("node", &ResilienceScore::node)
        .def_readonly("score", &ResilienceScore::score);

    py::class_<OptimizeCertificate>(m, "OptimizeCertificate")
        .def_readonly("optimal_value", &OptimizeCertificate::optimal_value)
        .def_readonly("ratio", &OptimizeCertificate::ratio);

    py::class_<SeedSelection>(m, "SeedSelection")
        .def_readonly("chosen", &SeedSelection::chosen)
        .def_readonly("objective", &SeedSelection::objective)
        .def_readonly("budget", &SeedSelection::budget)
        .def_readonly("certificate", &SeedSelection::certificate)
        .def_readonly("pick_order", &SeedSelection::pick_order)
        .def_readonly("marginal_gains", &SeedSelection::marginal_gains)
        .def_readonly("objective_evaluations", &SeedSelection::objective_evaluations);

    py::class_<CheckReport>(m, "CheckReport")
        .def_readonly("claim", &CheckReport::claim)
        .def_readonly("instances_checked", &CheckReport::instances_checked)
        .def_readonly("violations", &CheckReport::violations)
        .def_readonly("passed", &CheckReport::passed)
        .def_readonly("boundary_equalities", &CheckReport::boundary_equalities);

    py::class_<DistributionSummary>(m, "DistributionSummary")
        .def_readonly("metric", &DistributionSummary::metric)
        .def_readonly("mean", &DistributionSummary::mean)
        .def_readonly("stddev", &DistributionSummary::stddev)
        .def_readonly("histogram", &DistributionSummary::histogram)
        .def_readonly("population", &DistributionSummary::population);

    py::class_<RunManifest>(m, "RunManifest")
        .def_readonly("tool_version", &RunManifest::tool_version)
        .def_readonly("seed", &RunManifest::seed)
        .def_readonly("config_digest", &RunManifest::config_digest)
        .def_readonly("outputs", &RunManifest::outputs);

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const std::invalid_argument& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def("build_network", &build_from_tuples, py::arg("edges"),
          py::arg("pi0") = "const:0.1", py::arg("seed") = 0,
          "Build a decaying network from (u, v, tie_strength) triples.");
    m.def("load_edge_list", &load_edge_list, py::arg("path"));
    m.def("simulate", &run_simulation, py::arg("net"), py::arg("seed") = 0,
          py::arg("max_steps") = 100, py::arg("stop_when_empty") = true,
          py::arg("forced") = std::map<int, std::vector<NodeId>>{},
          "Run the synchronous stochastic decay process.");
    m.def("step",
          [](DecayingNetwork& net, std::uint64_t seed, const std::vector<NodeId>& forced) {
              return step(net, seed, forced);
          },
          py::arg("net"), py::arg("seed") = 0, py::arg("forced") = std::vector<NodeId>{});

    m.def("gain_single", &gain_single, py::arg("pi_v"), py::arg("delta_vw"));
    m.def("gain_broadcast", &gain_broadcast, py::arg("net"), py::arg("v"), py::arg("t"));
    m.def("gain_multi", &gain_multi, py::arg("net"), py::arg("w"), py::arg("t"));
    m.def("update_probability", &update_probability, py::arg("pi_prev"), py::arg("delta"));
    m.def("neighbor_partition", &neighbor_partition, py::arg("net"), py::arg("w"),
          py::arg("t"));
    m.def("is_decaying",
          [](const std::vector<StepRecord>& history) { return is_decaying(history); },
          py::arg("history"));

    m.def("expected_leavers", &expected_leavers, py::arg("net"));
    m.def("disconnect_probability", &disconnect_probability, py::arg("net"), py::arg("w"));
    m.def("edge_removal_probability", &edge_removal_probability, py::arg("net"),
          py::arg("u"), py::arg("v"));
    m.def("expected_edge_loss_one_step", &expected_edge_loss_one_step, py::arg("net"));
    m.def("realized_edge_loss", &realized_edge_loss, py::arg("record"),
          py::arg("net_before"));
    m.def("expected_edge_loss_horizon", &expected_edge_loss_horizon, py::arg("net"),
          py::arg("n"));
    m.def("monte_carlo_horizon", &monte_carlo_horizon, py::arg("net"), py::arg("n"),
          py::arg("runs"), py::arg("seed") = 0);

    m.def("leave_influence", &leave_influence, py::arg("trace"), py::arg("w"), py::arg("n"));
    m.def("neighbors_leave_resilience", &neighbors_leave_resilience, py::arg("trace"),
          py::arg("w"));
    m.def("expected_resilience", &expected_resilience, py::arg("net"), py::arg("w"));
    m.def("influence_ranking", &influence_ranking, py::arg("trace"), py::arg("n_offset") = 1);

    m.def("leave_objective",
          [](const DecayingNetwork& net, const std::vector<NodeId>& group) {
              return leave_objective(net, group);
          },
          py::arg("net"), py::arg("group"));
    m.def("leave_objective_additive",
          [](const DecayingNetwork& net, const std::vector<NodeId>& group) {
              return leave_objective_additive(net, group);
          },
          py::arg("net"), py::arg("group"));
    m.def("greedy_maximize", &greedy_maximize, py::arg("net"), py::arg("k"));
    m.def("lazy_marginals", &lazy_marginals, py::arg("net"), py::arg("k"));
    m.def("greedy_minimize", &greedy_minimize, py::arg("net"), py::arg("k"),
          py::arg("enumeration_cap") = kDefaultEnumerationCap);
    m.def("brute_force_optimum",
          [](const DecayingNetwork& net, int k, const std::string& mode,
             std::uint64_t cap) {
              OptimizeMode md =
                  mode == "min" ? OptimizeMode::Minimize : OptimizeMode::Maximize;
              return brute_force_optimum(net, k, md, cap);
          },
          py::arg("net"), py::arg("k"), py::arg("mode") = "max",
          py::arg("enumeration_cap") = kDefaultEnumerationCap);
    m.def("certify",
          [](const DecayingNetwork& net, SeedSelection& sel, std::uint64_t cap) {
              certify(net, sel, cap);
              return sel;
          },
          py::arg("net"), py::arg("selection"),
          py::arg("enumeration_cap") = kDefaultEnumerationCap);

    m.def("check_sum_order", &check_sum_order, py::arg("pairs"));
    m.def("check_product_order", &check_product_order, py::arg("pairs"));
    m.def("check_thm1", &check_thm1, py::arg("net"), py::arg("w"));
    m.def("check_thm3", &check_thm3, py::arg("net"), py::arg("w"));
    m.def("check_thm2", &check_thm2, py::arg("trace"));

    py::class_<NestedPair>(m, "NestedPair")
        .def(py::init([](std::vector<double> values, std::size_t sub_size) {
                 return NestedPair{std::move(values), sub_size};
             }),
             py::arg("values"), py::arg("sub_size"))
        .def_readonly("values", &NestedPair::values)
        .def_readonly("sub_size", &NestedPair::sub_size);
    m.def("random_nested_pairs", &random_nested_pairs, py::arg("seed"), py::arg("count"),
          py::arg("max_size") = 20);

    m.def("summarize_distribution",
          [](const std::vector<double>& values, int bins, const std::string& metric) {
              return summarize_distribution(values, bins, metric);
          },
          py::arg("values"), py::arg("bins") = 10, py::arg("metric") = "values");
    m.def("persist_trace", &persist_trace, py::arg("trace"), py::arg("dir"),
          py::arg("input_path") = "", py::arg("config_text") = "");
    m.def("load_trace", &load_trace, py::arg("dir"));
}
