#include "netdecay/corpus.hpp"

#include <algorithm>

#include "netdecay/rng.hpp"

namespace netdecay {

namespace {

double tie_draw(std::uint64_t seed, std::size_t u, std::size_t v) {
    return open_closed_draw(seed, Stream::GraphGen, u * 1315423911ULL + v, v, 0.0, 1.0);
}

} // namespace

std::vector<Edge> gnp_edges(std::size_t n, double p, std::uint64_t seed) {
    std::vector<Edge> edges;
    std::vector<char> connected(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (unit_draw(seed, Stream::GraphGen, i, j) < p) {
                edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j),
                                   tie_draw(seed, i, j));
                connected[i] = connected[j] = 1;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (connected[i]) continue;
        std::size_t j = (i + 1) % n;
        edges.emplace_back(static_cast<NodeId>(std::min(i, j)),
                           static_cast<NodeId>(std::max(i, j)),
                           tie_draw(seed, std::min(i, j), std::max(i, j)));
        connected[i] = connected[j] = 1;
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const Edge& a, const Edge& b) {
                                return a.u == b.u && a.v == b.v;
                            }),
                edges.end());
    return edges;
}

std::vector<Edge> star_edges(std::size_t leaves, std::uint64_t seed) {
    std::vector<Edge> edges;
    for (std::size_t i = 1; i <= leaves; ++i) {
        edges.emplace_back(0, static_cast<NodeId>(i), tie_draw(seed, 0, i));
    }
    return edges;
}

std::vector<Edge> path_edges(std::size_t n, std::uint64_t seed) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(i + 1),
                           tie_draw(seed, i, i + 1));
    }
    return edges;
}

std::vector<Edge> clique_edges(std::size_t n, std::uint64_t seed) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j),
                               tie_draw(seed, i, j));
        }
    }
    return edges;
}

DecayingNetwork random_network(std::size_t n, double p, std::uint64_t seed) {
    auto edges = gnp_edges(n, p, seed);
    return build_network(edges, InitialProbabilitySpec::uniform(0.0, 1.0), seed);
}

std::vector<CorpusEntry> standard_corpus(std::uint64_t seed) {
    std::vector<CorpusEntry> corpus;
    auto add = [&](const std::string& name, std::vector<Edge> edges, std::uint64_t s) {
        corpus.push_back(
            {name, build_network(edges, InitialProbabilitySpec::uniform(0.0, 1.0), s)});
    };

    const std::size_t gnp_sizes[] = {5, 6, 7, 8, 8, 10, 12, 14, 16};
    const double gnp_ps[] = {0.25, 0.4};
    int idx = 0;
    for (double p : gnp_ps) {
        for (std::size_t n : gnp_sizes) {
            add("gnp_" + std::to_string(n) + "_" + std::to_string(idx),
                gnp_edges(n, p, seed + static_cast<std::uint64_t>(idx)), seed + idx);
            ++idx;
        }
    }
    const std::size_t star_sizes[] = {3, 4, 5, 7};
    for (std::size_t leaves : star_sizes) {
        add("star_" + std::to_string(leaves),
            star_edges(leaves, seed + static_cast<std::uint64_t>(idx)), seed + idx);
        ++idx;
    }
    const std::size_t path_sizes[] = {4, 5, 6, 8};
    for (std::size_t n : path_sizes) {
        add("path_" + std::to_string(n),
            path_edges(n, seed + static_cast<std::uint64_t>(idx)), seed + idx);
        ++idx;
    }
    const std::size_t clique_sizes[] = {4, 5, 6, 8};
    for (std::size_t n : clique_sizes) {
        add("clique_" + std::to_string(n),
            clique_edges(n, seed + static_cast<std::uint64_t>(idx)), seed + idx);
        ++idx;
    }
    return corpus;
}

} // namespace netdecay
