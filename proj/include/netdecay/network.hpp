#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "netdecay/types.hpp"

namespace netdecay {

/// How the initial leave probabilities pi^0 are assigned.
struct InitialProbabilitySpec {
    enum class Kind { Constant, Uniform, InverseDegree, PerNode };

    Kind kind = Kind::Constant;
    double constant = 0.1;                          // Constant: c in (0,1]
    double lo = 0.0, hi = 1.0;                      // Uniform: draw on (lo,hi]
    double scale = 1.0;                             // InverseDegree: min(1, a/deg)
    std::vector<std::pair<NodeId, double>> per_node; // PerNode: explicit values

    static InitialProbabilitySpec constant_prob(double c);
    static InitialProbabilitySpec uniform(double lo, double hi);
    static InitialProbabilitySpec inverse_degree(double a);
    static InitialProbabilitySpec from_values(std::vector<std::pair<NodeId, double>> values);

    /// Parses "const:c", "uniform:lo:hi" or "invdeg:a". "file:path" is
    /// resolved by the io layer, which owns file access.
    static InitialProbabilitySpec parse(const std::string& token);

    void validate() const;
};

/// Optional per-step tie-strength override, keyed by the step at which the
/// gain is applied.
struct TieOverride {
    int step = 0;
    NodeId u = 0;
    NodeId v = 0;
    double tie_strength = 0.0;
};

/// A time-indexed undirected network that only shrinks. Left nodes keep
/// their final state; adjacency views at time t exclude them.
class DecayingNetwork {
  public:
    int time() const { return time_; }
    std::size_t initial_node_count() const { return nodes_.size(); }
    std::size_t alive_node_count() const { return alive_nodes_; }
    std::size_t alive_edge_count() const { return alive_edges_; }
    std::size_t initial_edge_count() const { return initial_edges_; }

    bool is_alive(NodeId w) const;
    /// Alive at the end of step t (t=0 means the initial state).
    bool alive_at(NodeId w, int t) const;
    const NodeState& state(NodeId w) const;
    double leave_prob(NodeId w) const { return state(w).leave_prob; }

    std::span<const Neighbor> initial_neighbors(NodeId w) const;
    std::vector<Neighbor> alive_neighbors(NodeId w) const;
    std::size_t initial_degree(NodeId w) const { return initial_neighbors(w).size(); }
    std::size_t alive_degree(NodeId w) const;

    std::vector<NodeId> alive_nodes() const;
    /// Alive edges, normalized u < v and sorted.
    std::vector<Edge> alive_edges() const;
    bool has_edge(NodeId u, NodeId v) const;

    /// Tie strength used for a gain applied at `step` (honors overrides).
    double tie_strength_at(NodeId u, NodeId v, int step) const;

    const std::vector<StepRecord>& history() const { return history_; }

    /// Commits one synchronous round: removes `leavers` (and their incident
    /// edges), applies the survivors' updated probabilities, and records the
    /// step. The removed-edge set is derived here so the StepRecord
    /// invariant cannot be violated by callers.
    const StepRecord& commit_step(
        std::vector<NodeId> leavers,
        const std::vector<std::pair<NodeId, double>>& updated_probs);

    /// Rebuilds the state as of the end of step t from the recorded history.
    DecayingNetwork snapshot_at(int t) const;

    friend DecayingNetwork build_network(std::span<const Edge> edges,
                                         const InitialProbabilitySpec& init,
                                         std::uint64_t seed,
                                         std::vector<TieOverride> overrides);

  private:
    void check_node(NodeId w) const;

    int time_ = 0;
    std::vector<NodeState> nodes_;
    std::vector<std::vector<Neighbor>> adjacency_; // t=0 adjacency, symmetric
    std::vector<StepRecord> history_;
    std::vector<TieOverride> overrides_; // sorted by (step,u,v)
    std::size_t alive_nodes_ = 0;
    std::size_t alive_edges_ = 0;
    std::size_t initial_edges_ = 0;
};

/// Validates the edge list (no self-loops, duplicates, out-of-range tie
/// strengths, isolated nodes) and assigns pi^0 from the initializer. Node
/// ids must be dense: every id in 0..max_id appears in some edge.
DecayingNetwork build_network(std::span<const Edge> edges,
                              const InitialProbabilitySpec& init,
                              std::uint64_t seed = 0,
                              std::vector<TieOverride> overrides = {});

/// Neighbors of w partitioned into (left at step t, still alive at t).
/// Together they are exactly w's neighborhood at t-1.
std::pair<std::vector<NodeId>, std::vector<NodeId>>
neighbor_partition(const DecayingNetwork& net, NodeId w, int t);

/// Definition-1 predicate over a recorded history: node sets nested and
/// shrinking, leavers consistent, no edge removed twice or touched by a
/// non-leaver.
bool is_decaying(std::span<const StepRecord> history);

} // namespace netdecay
