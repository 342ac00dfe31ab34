#include "netdecay/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace netdecay {

InfluenceScore leave_influence(const SimulationTrace& trace, NodeId w, int n) {
    const DecayingNetwork& net = trace.final_network;
    const auto& lt = net.state(w).leave_time;
    if (!lt)
        throw std::invalid_argument("node " + std::to_string(w) + " never left");
    if (n <= *lt)
        throw std::invalid_argument("window end must exceed the leave time " +
                                    std::to_string(*lt));
    InfluenceScore out;
    out.node = w;
    out.horizon = n;
    for (const auto& nb : net.initial_neighbors(w)) {
        const auto& nlt = net.state(nb.id).leave_time;
        if (nlt && *nlt > *lt && *nlt <= n) ++out.score;
    }
    return out;
}

ResilienceScore neighbors_leave_resilience(const SimulationTrace& trace, NodeId w) {
    const DecayingNetwork& net = trace.final_network;
    const auto& lt = net.state(w).leave_time;
    if (!lt)
        throw std::invalid_argument("node " + std::to_string(w) + " never left");
    std::size_t gone_before = 0;
    for (const auto& nb : net.initial_neighbors(w)) {
        const auto& nlt = net.state(nb.id).leave_time;
        if (nlt && *nlt < *lt) ++gone_before; // strictly before
    }
    ResilienceScore out;
    out.node = w;
    out.score = static_cast<double>(gone_before) /
                static_cast<double>(net.initial_degree(w));
    return out;
}

double expected_resilience(const DecayingNetwork& net, NodeId w) {
    if (!net.is_alive(w))
        throw std::invalid_argument("node " + std::to_string(w) + " already left");
    double total = 0.0;
    for (const auto& nb : net.alive_neighbors(w)) total += net.leave_prob(nb.id);
    return total / static_cast<double>(net.initial_degree(w));
}

std::vector<InfluenceScore> influence_ranking(const SimulationTrace& trace, int n_offset) {
    if (n_offset < 1) throw std::invalid_argument("n_offset must be >= 1");
    if (trace.steps().empty())
        throw std::invalid_argument("trace has no recorded steps");

    const DecayingNetwork& net = trace.final_network;
    std::vector<InfluenceScore> scores;
    for (NodeId w = 0; w < net.initial_node_count(); ++w) {
        const auto& lt = net.state(w).leave_time;
        if (!lt) continue;
        scores.push_back(leave_influence(trace, w, *lt + n_offset));
    }
    std::sort(scores.begin(), scores.end(),
              [](const InfluenceScore& a, const InfluenceScore& b) {
                  if (a.score != b.score) return a.score > b.score;
                  return a.node < b.node;
              });
    return scores;
}

} // namespace netdecay
