#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace netdecay {

using NodeId = std::uint32_t;

/// Undirected weighted edge, stored with u < v once normalized.
struct Edge {
    NodeId u = 0;
    NodeId v = 0;
    double tie_strength = 0.0;

    Edge() = default;
    Edge(NodeId a, NodeId b, double delta) : u(a), v(b), tie_strength(delta) {}

    Edge normalized() const {
        return u <= v ? *this : Edge{v, u, tie_strength};
    }
    friend bool operator==(const Edge& a, const Edge& b) {
        return a.u == b.u && a.v == b.v && a.tie_strength == b.tie_strength;
    }
    friend bool operator<(const Edge& a, const Edge& b) {
        if (a.u != b.u) return a.u < b.u;
        if (a.v != b.v) return a.v < b.v;
        return a.tie_strength < b.tie_strength;
    }
};

struct Neighbor {
    NodeId id = 0;
    double tie_strength = 0.0;
};

/// Per-member state. leave_time is set exactly when the node is gone;
/// leave_prob is frozen at its pre-leave value afterwards.
struct NodeState {
    double leave_prob = 0.0;
    double initial_prob = 0.0;
    std::optional<int> leave_time;

    bool alive() const { return !leave_time.has_value(); }
};

/// One synchronous round: who left, which edges went with them, and the
/// survivors' probabilities after the gain update.
struct StepRecord {
    int step = 0;
    std::vector<NodeId> leavers;                          // sorted
    std::vector<Edge> removed_edges;                      // normalized, sorted
    std::vector<std::pair<NodeId, double>> prob_snapshot; // sorted by node

    friend bool operator==(const StepRecord& a, const StepRecord& b) {
        return a.step == b.step && a.leavers == b.leavers &&
               a.removed_edges == b.removed_edges && a.prob_snapshot == b.prob_snapshot;
    }
};

} // namespace netdecay
