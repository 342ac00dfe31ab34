#pragma once

#include <vector>

#include "netdecay/dynamics.hpp"

namespace netdecay {

struct InfluenceScore {
    NodeId node = 0;
    int horizon = 0; // the n in LI(w, n)
    int score = 0;   // neighbors lost in (l(w), n]
};

struct ResilienceScore {
    NodeId node = 0;
    double score = 0.0; // fraction of t=0 neighbors gone strictly before l(w)
};

/// How many of w's neighbors (frozen at its leave) left within (l(w), n].
InfluenceScore leave_influence(const SimulationTrace& trace, NodeId w, int n);

/// Fraction of w's original neighbors that left strictly before w did.
ResilienceScore neighbors_leave_resilience(const SimulationTrace& trace, NodeId w);

/// Expectation form of NLR on the current state: sum of alive neighbors'
/// pi over the t=0 degree.
double expected_resilience(const DecayingNetwork& net, NodeId w);

/// Every left node scored at n = l(w) + n_offset, descending score, ties by
/// ascending node id.
std::vector<InfluenceScore> influence_ranking(const SimulationTrace& trace, int n_offset);

} // namespace netdecay
