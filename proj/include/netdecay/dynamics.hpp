#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "netdecay/network.hpp"
#include "netdecay/types.hpp"

namespace netdecay {

/// Outcome of the multi-leaver gain for one surviving node.
struct GainResult {
    NodeId node = 0;
    double delta = 0.0; // probability gain in [0,1]
    double xi = 0.0;    // left fraction of the pre-step neighborhood
    std::vector<NodeId> contributing_leavers;
};

struct SimulationConfig {
    std::uint64_t seed = 0;
    int max_steps = 100;
    bool stop_when_empty = true;
    std::map<int, std::vector<NodeId>> forced_leavers;

    void validate() const;
};

struct SimulationTrace {
    DecayingNetwork final_network;
    std::uint64_t seed = 0;

    const std::vector<StepRecord>& steps() const { return final_network.history(); }
};

/// Single-leaver gain, 1-(1-pi_v)(1-delta_vw).
double gain_single(double pi_v, double delta_vw);

/// Total gain the leave of v (at step t-1) produced across its surviving
/// neighbors; zero if none survived.
double gain_broadcast(const DecayingNetwork& net, NodeId v, int t);

/// Multi-leaver gain applied to survivor w at step t, from the recorded
/// history: cohort is w's neighbors that left at t, the xi denominator is
/// w's neighborhood entering the step, leaver probabilities are their
/// frozen pre-leave values.
GainResult gain_multi(const DecayingNetwork& net, NodeId w, int t);

/// min(1, pi_prev + delta); never decreases.
double update_probability(double pi_prev, double delta);

/// One synchronous round: sample leavers from the current probabilities
/// (plus `forced`), remove their edges, update every survivor. Draws come
/// from one counter-based substream per node per step.
StepRecord step(DecayingNetwork& net, std::uint64_t seed,
                std::span<const NodeId> forced = {});

/// Runs step() until max_steps or extinction. The input network is copied;
/// identical seed and input give a bitwise-identical trace.
SimulationTrace simulate(DecayingNetwork net, const SimulationConfig& cfg);

/// Per-step ensemble aggregates over `runs` simulations with seeds
/// cfg.seed + run_index. Steps beyond a run's extinction count as empty.
struct EnsembleReport {
    int runs = 0;
    std::vector<double> mean_alive_nodes, std_alive_nodes;
    std::vector<double> mean_alive_edges, std_alive_edges;
    std::vector<double> mean_leavers, mean_removed_edges;
};

EnsembleReport ensemble_stats(const DecayingNetwork& net, const SimulationConfig& cfg,
                              int runs);

} // namespace netdecay
