#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "netdecay/dynamics.hpp"
#include "netdecay/network.hpp"

namespace netdecay {

/// Receipt for a persisted run: what produced it and digests of every
/// output, so byte-identical reruns are checkable from manifests alone.
struct RunManifest {
    std::string tool_version;
    std::string input_path;
    std::uint64_t seed = 0;
    std::string config_digest; // hex FNV-1a of the resolved configuration
    std::vector<std::pair<std::string, std::string>> outputs; // (relative path, digest)

    std::string to_json() const;
    static RunManifest from_json(const std::string& text);
};

struct DistributionSummary {
    std::string metric;
    double mean = 0.0;
    double stddev = 0.0; // population form
    std::vector<std::pair<double, std::size_t>> histogram; // (bin lower edge, count)
    double bin_width = 0.0;
    std::size_t population = 0;
};

/// Shortest round-trip decimal formatting; parsing it back restores the
/// exact double.
std::string format_double(double value);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);
std::string file_digest(const std::filesystem::path& path);

/// Whitespace-separated "u v delta" lines; '#' comments; one optional
/// non-numeric header line. Duplicates (either orientation) and out-of-range
/// tie strengths are reported with their line number.
std::vector<Edge> load_edge_list(const std::filesystem::path& path);
void save_edge_list(const std::filesystem::path& path, std::span<const Edge> edges);

/// "u pi0" lines, same conventions as the edge list.
std::vector<std::pair<NodeId, double>> load_node_probs(const std::filesystem::path& path);

/// One value per line.
std::vector<double> load_values(const std::filesystem::path& path);

/// Resolves a --pi0 style token, including "file:path".
InitialProbabilitySpec resolve_initial_spec(const std::string& token);

DistributionSummary summarize_distribution(std::span<const double> values, int bins,
                                           const std::string& metric = "values");

/// Writes the trace (initial edges, pi0, per-step CSVs) plus a manifest into
/// dir. config_text is the resolved configuration the digest is taken over.
RunManifest persist_trace(const SimulationTrace& trace, const std::filesystem::path& dir,
                          const std::string& input_path = "",
                          const std::string& config_text = "");

/// Recontainer for persist_trace outputs: rebuilds the initial network and
/// replays the recorded steps, verifying structural consistency.
SimulationTrace load_trace(const std::filesystem::path& dir);

RunManifest load_manifest(const std::filesystem::path& path);

} // namespace netdecay
