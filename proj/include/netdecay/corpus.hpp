#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netdecay/network.hpp"

namespace netdecay {

// Deterministic graph generators for the check harness and tests. All draws
// come from the counter-based streams, so a (kind, seed) pair pins the graph.

/// G(n,p) with uniform tie strengths on (0,1]; isolated nodes are wired to
/// their successor so the result is always ingestible.
std::vector<Edge> gnp_edges(std::size_t n, double p, std::uint64_t seed);

std::vector<Edge> star_edges(std::size_t leaves, std::uint64_t seed);
std::vector<Edge> path_edges(std::size_t n, std::uint64_t seed);
std::vector<Edge> clique_edges(std::size_t n, std::uint64_t seed);

/// G(n,p) network with pi^0 and tie strengths uniform on (0,1].
DecayingNetwork random_network(std::size_t n, double p, std::uint64_t seed);

struct CorpusEntry {
    std::string name;
    DecayingNetwork network;
};

/// The 30-graph verification corpus: random graphs plus stars, paths and
/// cliques, all with uniform random pi^0 and tie strengths.
std::vector<CorpusEntry> standard_corpus(std::uint64_t seed);

} // namespace netdecay
