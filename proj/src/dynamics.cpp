#include "netdecay/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "netdecay/rng.hpp"

namespace netdecay {

void SimulationConfig::validate() const {
    if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
}

double gain_single(double pi_v, double delta_vw) {
    if (!(pi_v >= 0.0 && pi_v <= 1.0))
        throw std::invalid_argument("leaver probability outside [0,1]");
    if (!(delta_vw > 0.0 && delta_vw <= 1.0))
        throw std::invalid_argument("tie strength outside (0,1]");
    return 1.0 - (1.0 - pi_v) * (1.0 - delta_vw);
}

double gain_broadcast(const DecayingNetwork& net, NodeId v, int t) {
    if (t < 1) throw std::invalid_argument("gain_broadcast needs t >= 1");
    const auto& lt = net.state(v).leave_time;
    if (!lt || *lt != t - 1)
        throw std::invalid_argument("node " + std::to_string(v) + " did not leave at step " +
                                    std::to_string(t - 1));
    double total = 0.0;
    for (const auto& nb : net.initial_neighbors(v)) {
        if (!net.alive_at(nb.id, t - 1)) continue;
        total += gain_single(net.state(v).leave_prob,
                             net.tie_strength_at(v, nb.id, t - 1));
    }
    return total;
}

GainResult gain_multi(const DecayingNetwork& net, NodeId w, int t) {
    if (t < 1 || t > net.time())
        throw std::invalid_argument("step " + std::to_string(t) +
                                    " is not covered by the history");
    if (!net.alive_at(w, t))
        throw std::invalid_argument("node " + std::to_string(w) +
                                    " did not survive step " + std::to_string(t));

    GainResult res;
    res.node = w;
    std::size_t neighborhood = 0;
    double product = 1.0;
    for (const auto& nb : net.initial_neighbors(w)) {
        if (!net.alive_at(nb.id, t - 1)) continue;
        ++neighborhood;
        const auto& lt = net.state(nb.id).leave_time;
        if (lt && *lt == t) {
            res.contributing_leavers.push_back(nb.id);
            product *= (1.0 - net.state(nb.id).leave_prob) *
                       (1.0 - net.tie_strength_at(w, nb.id, t));
        }
    }
    if (res.contributing_leavers.empty() || neighborhood == 0) {
        return res; // no leavers, no gain
    }
    res.xi = static_cast<double>(res.contributing_leavers.size()) /
             static_cast<double>(neighborhood);
    res.delta = 1.0 - (1.0 - res.xi) * product;
    return res;
}

double update_probability(double pi_prev, double delta) {
    if (!(pi_prev >= 0.0 && pi_prev <= 1.0))
        throw std::invalid_argument("probability outside [0,1]");
    if (!(delta >= 0.0 && delta <= 1.0))
        throw std::invalid_argument("gain outside [0,1]");
    return std::min(1.0, pi_prev + delta);
}

StepRecord step(DecayingNetwork& net, std::uint64_t seed, std::span<const NodeId> forced) {
    if (net.alive_node_count() == 0)
        throw std::invalid_argument("cannot step a network with no alive nodes");
    const int t = net.time() + 1;

    std::vector<NodeId> leavers;
    for (NodeId w : forced) {
        if (!net.is_alive(w))
            throw std::invalid_argument("forced leaver " + std::to_string(w) +
                                        " is not alive");
        leavers.push_back(w);
    }
    for (NodeId w : net.alive_nodes()) {
        double pi = net.leave_prob(w);
        if (pi >= 1.0) {
            leavers.push_back(w); // certain; no draw consumed
        } else if (unit_draw(seed, Stream::LeaveDraw, t, w) < pi) {
            leavers.push_back(w);
        }
    }
    std::sort(leavers.begin(), leavers.end());
    leavers.erase(std::unique(leavers.begin(), leavers.end()), leavers.end());

    // Synchronous update: gains consume the whole cohort's pre-step state.
    std::unordered_set<NodeId> leaving(leavers.begin(), leavers.end());
    std::vector<std::pair<NodeId, double>> updates;
    for (NodeId w : net.alive_nodes()) {
        if (leaving.count(w)) continue;
        std::size_t neighborhood = 0;
        std::size_t cohort = 0;
        double product = 1.0;
        for (const auto& nb : net.initial_neighbors(w)) {
            if (!net.is_alive(nb.id)) continue;
            ++neighborhood;
            if (leaving.count(nb.id)) {
                ++cohort;
                product *= (1.0 - net.leave_prob(nb.id)) *
                           (1.0 - net.tie_strength_at(w, nb.id, t));
            }
        }
        if (cohort == 0) continue;
        double xi = static_cast<double>(cohort) / static_cast<double>(neighborhood);
        double delta = 1.0 - (1.0 - xi) * product;
        updates.emplace_back(w, update_probability(net.leave_prob(w), delta));
    }
    return net.commit_step(std::move(leavers), updates);
}

SimulationTrace simulate(DecayingNetwork net, const SimulationConfig& cfg) {
    cfg.validate();
    for (int t = 1; t <= cfg.max_steps; ++t) {
        if (net.alive_node_count() > 0) {
            std::span<const NodeId> forced;
            if (auto it = cfg.forced_leavers.find(t); it != cfg.forced_leavers.end()) {
                forced = it->second;
            }
            step(net, cfg.seed, forced);
        } else if (cfg.stop_when_empty) {
            break;
        } else {
            net.commit_step({}, {}); // fixed-length trace: explicit empty round
        }
        if (cfg.stop_when_empty && net.alive_node_count() == 0) break;
    }
    return SimulationTrace{std::move(net), cfg.seed};
}

EnsembleReport ensemble_stats(const DecayingNetwork& net, const SimulationConfig& cfg,
                              int runs) {
    cfg.validate();
    if (runs < 1) throw std::invalid_argument("ensemble needs runs >= 1");

    struct RunRow {
        std::vector<std::array<double, 4>> per_step; // nodes, edges, leavers, removed
    };
    std::vector<RunRow> rows(static_cast<std::size_t>(runs));

    auto worker = [&](int first, int stride) {
        for (int r = first; r < runs; r += stride) {
            SimulationConfig run_cfg = cfg;
            run_cfg.seed = cfg.seed + static_cast<std::uint64_t>(r);
            SimulationTrace trace = simulate(net, run_cfg);
            auto& row = rows[static_cast<std::size_t>(r)].per_step;
            for (const auto& rec : trace.steps()) {
                double removed = static_cast<double>(rec.removed_edges.size());
                double leavers = static_cast<double>(rec.leavers.size());
                double nodes_after = static_cast<double>(rec.prob_snapshot.size());
                double edges_before =
                    row.empty() ? static_cast<double>(net.alive_edge_count()) : row.back()[1];
                row.push_back({nodes_after, edges_before - removed, leavers, removed});
            }
        }
    };

    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    int threads = static_cast<int>(std::min<unsigned>(hw, static_cast<unsigned>(runs)));
    if (threads > 1) {
        std::vector<std::future<void>> futs;
        futs.reserve(static_cast<std::size_t>(threads));
        for (int i = 0; i < threads; ++i)
            futs.push_back(std::async(std::launch::async, worker, i, threads));
        for (auto& f : futs) f.get();
    } else {
        worker(0, 1);
    }

    std::size_t max_len = 0;
    for (const auto& row : rows) max_len = std::max(max_len, row.per_step.size());

    EnsembleReport rep;
    rep.runs = runs;
    rep.mean_alive_nodes.assign(max_len, 0.0);
    rep.std_alive_nodes.assign(max_len, 0.0);
    rep.mean_alive_edges.assign(max_len, 0.0);
    rep.std_alive_edges.assign(max_len, 0.0);
    rep.mean_leavers.assign(max_len, 0.0);
    rep.mean_removed_edges.assign(max_len, 0.0);

    // Sequential reduction in run order keeps the result deterministic.
    for (std::size_t s = 0; s < max_len; ++s) {
        double sn = 0, sn2 = 0, se = 0, se2 = 0, sl = 0, sr = 0;
        for (const auto& row : rows) {
            double n = 0, e = 0, l = 0, rm = 0;
            if (s < row.per_step.size()) {
                n = row.per_step[s][0];
                e = row.per_step[s][1];
                l = row.per_step[s][2];
                rm = row.per_step[s][3];
            } else if (!row.per_step.empty()) {
                n = row.per_step.back()[0];
                e = row.per_step.back()[1];
            } else {
                n = static_cast<double>(net.alive_node_count());
                e = static_cast<double>(net.alive_edge_count());
            }
            sn += n;
            sn2 += n * n;
            se += e;
            se2 += e * e;
            sl += l;
            sr += rm;
        }
        double inv = 1.0 / runs;
        rep.mean_alive_nodes[s] = sn * inv;
        rep.mean_alive_edges[s] = se * inv;
        rep.mean_leavers[s] = sl * inv;
        rep.mean_removed_edges[s] = sr * inv;
        rep.std_alive_nodes[s] = std::sqrt(std::max(0.0, sn2 * inv - sn * inv * sn * inv));
        rep.std_alive_edges[s] = std::sqrt(std::max(0.0, se2 * inv - se * inv * se * inv));
    }
    return rep;
}

} // namespace netdecay
