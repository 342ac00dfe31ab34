#pragma once

#include <cstdint>
#include <vector>

#include "netdecay/dynamics.hpp"
#include "netdecay/network.hpp"

namespace netdecay {

/// Sampling-free forecast of node/edge loss over the next n steps.
struct ExpectationReport {
    int horizon = 0;
    std::vector<double> expected_node_loss; // per projected step
    std::vector<double> expected_edge_loss;
    double cumulative_edge_loss = 0.0;
    double cumulative_node_loss = 0.0;
};

/// Expected leaver count at the next step: sum of alive nodes' pi.
double expected_leavers(const DecayingNetwork& net);

/// Probability that all of w's current neighbors leave next step.
double disconnect_probability(const DecayingNetwork& net, NodeId w);

/// pi_u + pi_v - pi_u*pi_v for a present edge.
double edge_removal_probability(const DecayingNetwork& net, NodeId u, NodeId v);

/// Expected number of edges removed next step, summed over alive edges.
double expected_edge_loss_one_step(const DecayingNetwork& net);

/// Degree-sum edge-loss count for a recorded step: sum of leaver degrees in
/// the pre-step network minus edges internal to the leaver set. Must equal
/// the record's removed-edge count.
long realized_edge_loss(const StepRecord& record, const DecayingNetwork& net_before);

/// Multi-step forecast on a deterministic projection (see the module docs in
/// the README: survival-conditioned two-point laws per node, per-edge
/// endpoint laws conditioned on the partner being alive). Step 1 equals
/// expected_edge_loss_one_step exactly; later steps are approximate, with
/// monte_carlo_horizon as the sampling ground truth.
ExpectationReport expected_edge_loss_horizon(const DecayingNetwork& net, int n);

/// Sampling estimate of the same per-step losses (mean over `runs`
/// simulations with seeds seed+run_index).
ExpectationReport monte_carlo_horizon(const DecayingNetwork& net, int n, int runs,
                                      std::uint64_t seed);

} // namespace netdecay
