#include "netdecay/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "netdecay/version.hpp"

namespace netdecay {

namespace {

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

bool parse_u32(const std::string& s, NodeId& out) {
    auto end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && ptr == end;
}

bool parse_f64(const std::string& s, double& out) {
    auto end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && ptr == end;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line_no,
                             const std::string& what) {
    throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": " + what);
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary); // '\n' endings everywhere
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    auto out = open_output(path);
    out << contents;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

} // namespace

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw std::runtime_error("double formatting failed");
    return std::string(buf, ptr);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return hex64(fnv1a64(buf.str()));
}

std::vector<Edge> load_edge_list(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::vector<Edge> edges;
    std::set<std::pair<NodeId, NodeId>> seen;
    std::string line;
    std::size_t line_no = 0;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokens_of(strip_comment(line));
        if (toks.empty()) continue;
        NodeId u = 0, v = 0;
        double delta = 0.0;
        bool numeric = toks.size() == 3 && parse_u32(toks[0], u) && parse_u32(toks[1], v) &&
                       parse_f64(toks[2], delta);
        if (!numeric) {
            if (header_allowed) { // a single leading header line is fine
                header_allowed = false;
                continue;
            }
            parse_fail(path, line_no, "expected 'u v delta', got '" + line + "'");
        }
        header_allowed = false;
        if (!(delta > 0.0 && delta <= 1.0))
            parse_fail(path, line_no,
                       "tie strength " + toks[2] + " outside (0,1] (column 3)");
        if (!seen.insert(std::minmax(u, v)).second)
            parse_fail(path, line_no, "duplicate edge (" + toks[0] + "," + toks[1] + ")");
        edges.emplace_back(u, v, delta);
    }
    return edges;
}

void save_edge_list(const std::filesystem::path& path, std::span<const Edge> edges) {
    auto out = open_output(path);
    for (const Edge& e : edges) {
        out << e.u << ' ' << e.v << ' ' << format_double(e.tie_strength) << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<std::pair<NodeId, double>> load_node_probs(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::vector<std::pair<NodeId, double>> probs;
    std::set<NodeId> seen;
    std::string line;
    std::size_t line_no = 0;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokens_of(strip_comment(line));
        if (toks.empty()) continue;
        NodeId u = 0;
        double p = 0.0;
        bool numeric = toks.size() == 2 && parse_u32(toks[0], u) && parse_f64(toks[1], p);
        if (!numeric) {
            if (header_allowed) {
                header_allowed = false;
                continue;
            }
            parse_fail(path, line_no, "expected 'u pi0', got '" + line + "'");
        }
        header_allowed = false;
        if (!(p > 0.0 && p <= 1.0))
            parse_fail(path, line_no, "pi0 " + toks[1] + " outside (0,1] (column 2)");
        if (!seen.insert(u).second)
            parse_fail(path, line_no, "duplicate node " + toks[0]);
        probs.emplace_back(u, p);
    }
    return probs;
}

std::vector<double> load_values(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokens_of(strip_comment(line));
        if (toks.empty()) continue;
        double v = 0.0;
        if (toks.size() != 1 || !parse_f64(toks[0], v))
            parse_fail(path, line_no, "expected one value, got '" + line + "'");
        values.push_back(v);
    }
    return values;
}

InitialProbabilitySpec resolve_initial_spec(const std::string& token) {
    if (token.rfind("file:", 0) == 0) {
        return InitialProbabilitySpec::from_values(load_node_probs(token.substr(5)));
    }
    return InitialProbabilitySpec::parse(token);
}

DistributionSummary summarize_distribution(std::span<const double> values, int bins,
                                           const std::string& metric) {
    if (values.empty()) throw std::invalid_argument("no values to summarize");
    if (bins < 1) throw std::invalid_argument("bins must be >= 1");

    DistributionSummary out;
    out.metric = metric;
    out.population = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - out.mean) * (v - out.mean);
    out.stddev = std::sqrt(var / static_cast<double>(values.size()));

    auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
    double lo = *mn_it, hi = *mx_it;
    double width = (hi - lo) / static_cast<double>(bins);
    out.bin_width = width;
    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    for (double v : values) {
        std::size_t idx = 0;
        if (width > 0.0) {
            idx = static_cast<std::size_t>((v - lo) / width);
            idx = std::min(idx, static_cast<std::size_t>(bins - 1));
        }
        ++counts[idx];
    }
    for (int b = 0; b < bins; ++b) {
        out.histogram.emplace_back(lo + width * b, counts[static_cast<std::size_t>(b)]);
    }
    return out;
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["tool_version"] = tool_version;
    j["input_path"] = input_path;
    j["seed"] = seed;
    j["config_digest"] = config_digest;
    nlohmann::json outs = nlohmann::json::array();
    for (const auto& [path, digest] : outputs) {
        outs.push_back({{"path", path}, {"digest", digest}});
    }
    j["outputs"] = outs;
    return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    RunManifest m;
    m.tool_version = j.at("tool_version").get<std::string>();
    m.input_path = j.at("input_path").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.config_digest = j.at("config_digest").get<std::string>();
    for (const auto& item : j.at("outputs")) {
        m.outputs.emplace_back(item.at("path").get<std::string>(),
                               item.at("digest").get<std::string>());
    }
    return m;
}

RunManifest persist_trace(const SimulationTrace& trace, const std::filesystem::path& dir,
                          const std::string& input_path, const std::string& config_text) {
    std::filesystem::create_directories(dir);
    const DecayingNetwork& net = trace.final_network;
    const DecayingNetwork initial = net.snapshot_at(0);

    save_edge_list(dir / "edges.txt", initial.alive_edges());

    {
        std::ostringstream pi0;
        for (NodeId w = 0; w < net.initial_node_count(); ++w) {
            pi0 << w << ' ' << format_double(net.state(w).initial_prob) << '\n';
        }
        write_file(dir / "pi0.txt", pi0.str());
    }
    {
        std::ostringstream steps;
        steps << "step,alive_nodes,alive_edges,leavers,removed_edges\n";
        std::size_t edges_left = initial.alive_edge_count();
        for (const StepRecord& rec : trace.steps()) {
            edges_left -= rec.removed_edges.size();
            steps << rec.step << ',' << rec.prob_snapshot.size() << ',' << edges_left
                  << ',' << rec.leavers.size() << ',' << rec.removed_edges.size() << '\n';
        }
        write_file(dir / "steps.csv", steps.str());
    }
    {
        std::ostringstream leavers;
        leavers << "step,node\n";
        for (const StepRecord& rec : trace.steps()) {
            for (NodeId w : rec.leavers) leavers << rec.step << ',' << w << '\n';
        }
        write_file(dir / "leavers.csv", leavers.str());
    }
    {
        std::ostringstream removed;
        removed << "step,u,v,tie_strength\n";
        for (const StepRecord& rec : trace.steps()) {
            for (const Edge& e : rec.removed_edges) {
                removed << rec.step << ',' << e.u << ',' << e.v << ','
                        << format_double(e.tie_strength) << '\n';
            }
        }
        write_file(dir / "removed_edges.csv", removed.str());
    }
    {
        std::ostringstream probs;
        probs << "step,node,pi\n";
        for (const StepRecord& rec : trace.steps()) {
            for (const auto& [w, pi] : rec.prob_snapshot) {
                probs << rec.step << ',' << w << ',' << format_double(pi) << '\n';
            }
        }
        write_file(dir / "probs.csv", probs.str());
    }

    RunManifest manifest;
    manifest.tool_version = kToolVersion;
    manifest.input_path = input_path;
    manifest.seed = trace.seed;
    manifest.config_digest = hex64(fnv1a64(config_text));
    for (const char* name :
         {"edges.txt", "pi0.txt", "steps.csv", "leavers.csv", "removed_edges.csv",
          "probs.csv"}) {
        manifest.outputs.emplace_back(name, file_digest(dir / name));
    }
    write_file(dir / "manifest.json", manifest.to_json());
    return manifest;
}

SimulationTrace load_trace(const std::filesystem::path& dir) {
    RunManifest manifest = load_manifest(dir / "manifest.json");
    auto edges = load_edge_list(dir / "edges.txt");
    auto pi0 = load_node_probs(dir / "pi0.txt");
    DecayingNetwork net = build_network(edges, InitialProbabilitySpec::from_values(pi0));

    // Per-step data, replayed through the same commit path the simulator uses.
    // steps.csv is the authoritative step count: rounds with no leavers leave
    // no rows in the other files.
    int last_step = 0;
    {
        auto in = open_input(dir / "steps.csv");
        std::string line;
        std::getline(in, line); // header
        std::size_t line_no = 1;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            int step = 0;
            if (std::sscanf(line.c_str(), "%d", &step) != 1)
                parse_fail(dir / "steps.csv", line_no, "bad row '" + line + "'");
            last_step = std::max(last_step, step);
        }
    }
    std::map<int, std::vector<NodeId>> leavers;
    {
        auto in = open_input(dir / "leavers.csv");
        std::string line;
        std::getline(in, line); // header
        std::size_t line_no = 1;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            int step = 0;
            NodeId node = 0;
            if (std::sscanf(line.c_str(), "%d,%u", &step, &node) != 2)
                parse_fail(dir / "leavers.csv", line_no, "bad row '" + line + "'");
            leavers[step].push_back(node);
        }
    }
    std::map<int, std::vector<std::pair<NodeId, double>>> probs;
    {
        auto in = open_input(dir / "probs.csv");
        std::string line;
        std::getline(in, line);
        std::size_t line_no = 1;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            auto c1 = line.find(',');
            auto c2 = line.find(',', c1 + 1);
            if (c1 == std::string::npos || c2 == std::string::npos)
                parse_fail(dir / "probs.csv", line_no, "bad row '" + line + "'");
            int step = 0;
            NodeId node = 0;
            double pi = 0.0;
            if (!parse_u32(line.substr(c1 + 1, c2 - c1 - 1), node) ||
                !parse_f64(line.substr(c2 + 1), pi) ||
                std::sscanf(line.c_str(), "%d", &step) != 1)
                parse_fail(dir / "probs.csv", line_no, "bad row '" + line + "'");
            probs[step].emplace_back(node, pi);
            last_step = std::max(last_step, step);
        }
    }
    std::map<int, std::vector<Edge>> removed;
    {
        auto in = open_input(dir / "removed_edges.csv");
        std::string line;
        std::getline(in, line);
        std::size_t line_no = 1;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            int step = 0;
            NodeId u = 0, v = 0;
            auto c3 = line.rfind(',');
            double delta = 0.0;
            if (c3 == std::string::npos || !parse_f64(line.substr(c3 + 1), delta) ||
                std::sscanf(line.c_str(), "%d,%u,%u", &step, &u, &v) != 3)
                parse_fail(dir / "removed_edges.csv", line_no, "bad row '" + line + "'");
            removed[step].emplace_back(u, v, delta);
            last_step = std::max(last_step, step);
        }
    }
    for (const auto& [step, nodes] : leavers) last_step = std::max(last_step, step);

    for (int t = 1; t <= last_step; ++t) {
        auto lv = leavers.count(t) ? leavers.at(t) : std::vector<NodeId>{};
        auto pr = probs.count(t) ? probs.at(t) : std::vector<std::pair<NodeId, double>>{};
        // Probability rows may repeat unchanged values; commit_step validates
        // monotonicity, so pass them all through.
        const StepRecord& rec = net.commit_step(std::move(lv), pr);
        std::vector<Edge> expect = removed.count(t) ? removed.at(t) : std::vector<Edge>{};
        std::sort(expect.begin(), expect.end());
        if (rec.removed_edges != expect)
            throw std::runtime_error("removed_edges.csv disagrees with the replayed step " +
                                     std::to_string(t));
        if (rec.prob_snapshot != pr)
            throw std::runtime_error("probs.csv does not cover every survivor at step " +
                                     std::to_string(t));
    }
    return SimulationTrace{std::move(net), manifest.seed};
}

RunManifest load_manifest(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return RunManifest::from_json(buf.str());
}

} // namespace netdecay
