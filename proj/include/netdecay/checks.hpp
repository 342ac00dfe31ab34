#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netdecay/dynamics.hpp"
#include "netdecay/network.hpp"

namespace netdecay {

/// Result of one executable claim check. Violation descriptors are capped at
/// kMaxViolationDetails entries; `passed` reflects the full count.
struct CheckReport {
    std::string claim; // lemma1 | lemma2 | thm1 | thm2 | thm3
    std::uint64_t instances_checked = 0;
    std::vector<std::string> violations;
    bool passed = true;
    std::uint64_t boundary_equalities = 0; // thm3: saturated marginals meeting exactly
};

inline constexpr std::size_t kMaxViolationDetails = 50;
inline constexpr double kCheckSlack = 1e-12;

/// A nested pair of probability multisets: the subset is the first sub_size
/// entries of values.
struct NestedPair {
    std::vector<double> values;
    std::size_t sub_size = 0;
};

std::vector<NestedPair> random_nested_pairs(std::uint64_t seed, std::size_t count,
                                            std::size_t max_size);

/// Sum over the subset never exceeds the sum over the superset.
CheckReport check_sum_order(const std::vector<NestedPair>& pairs);

/// Product over the subset never falls below the product over the superset.
CheckReport check_product_order(const std::vector<NestedPair>& pairs);

/// Marginals of the additive gain are identical for every nested (S,T,v)
/// over w's alive neighborhood; exhaustive, degree capped at 7.
CheckReport check_thm1(const DecayingNetwork& net, NodeId w);

/// Diminishing marginals of the multi-leaver gain over w's alive
/// neighborhood, with xi = |set|/deg(w); exhaustive, degree capped at 7.
CheckReport check_thm3(const DecayingNetwork& net, NodeId w);

/// Per-node probability sequences never decrease before the leave.
CheckReport check_thm2(const SimulationTrace& trace);

} // namespace netdecay
