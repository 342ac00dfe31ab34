#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "netdecay/network.hpp"

namespace netdecay {

enum class OptimizeMode { Maximize, Minimize };

struct OptimizeCertificate {
    double optimal_value = 0.0;
    double ratio = 0.0; // objective/optimal for maximize, optimal/objective for minimize
};

struct SeedSelection {
    std::vector<NodeId> chosen; // sorted
    double objective = 0.0;
    int budget = 0;
    OptimizeMode mode = OptimizeMode::Maximize;
    std::optional<OptimizeCertificate> certificate;
    std::vector<NodeId> pick_order;     // greedy insertion order (empty for enumeration)
    std::vector<double> marginal_gains; // aligned with pick_order
    std::uint64_t objective_evaluations = 0;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// f(A): total one-step gain the simultaneous leave of A induces on the
/// survivors, each survivor scored by the multi-leaver gain with cohort
/// A intersected with its alive neighborhood. f(empty) = 0.
double leave_objective(const DecayingNetwork& net, std::span<const NodeId> group);

/// Additive diagnostic variant: per-survivor sum of single-leaver gains with
/// the xi term disabled. Modular in A, used by the Theorem-1 style checks.
double leave_objective_additive(const DecayingNetwork& net, std::span<const NodeId> group);

/// Plain greedy: k rounds, each adding the alive node with the largest
/// marginal gain, ties broken by ascending id.
SeedSelection greedy_maximize(const DecayingNetwork& net, int k);

/// Lazy greedy: identical output to greedy_maximize (same tie-break), never
/// more objective evaluations.
SeedSelection lazy_marginals(const DecayingNetwork& net, int k);

/// Exact enumeration when C(|V|, k) fits the cap, greedy argmin rounds above
/// it. Ties by ascending id / lexicographic subset order.
SeedSelection greedy_minimize(const DecayingNetwork& net, int k,
                              std::uint64_t enumeration_cap = kDefaultEnumerationCap);

/// Exhaustive optimum (sizes <= k for maximize, exactly k for minimize).
/// Refuses when the subset count exceeds the cap, or when k >= |V| (the
/// problem is only meaningful for proper subsets).
SeedSelection brute_force_optimum(const DecayingNetwork& net, int k, OptimizeMode mode,
                                  std::uint64_t enumeration_cap = kDefaultEnumerationCap);

/// Attaches a brute-force certificate to an existing selection.
void certify(const DecayingNetwork& net, SeedSelection& selection,
             std::uint64_t enumeration_cap = kDefaultEnumerationCap);

} // namespace netdecay
