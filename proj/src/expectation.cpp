#include "netdecay/expectation.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace netdecay {

double expected_leavers(const DecayingNetwork& net) {
    double total = 0.0;
    for (NodeId w : net.alive_nodes()) total += net.leave_prob(w);
    return total;
}

double disconnect_probability(const DecayingNetwork& net, NodeId w) {
    if (!net.is_alive(w))
        throw std::invalid_argument("node " + std::to_string(w) + " already left");
    double product = 1.0; // empty neighborhood: already disconnected
    for (const auto& nb : net.alive_neighbors(w)) product *= net.leave_prob(nb.id);
    return product;
}

// Inclusion-exclusion in its complement form: exact at the pi = 1 boundary
// and symmetric in the endpoints.
static double removal_probability(double pu, double pv) {
    return 1.0 - (1.0 - pu) * (1.0 - pv);
}

double edge_removal_probability(const DecayingNetwork& net, NodeId u, NodeId v) {
    if (!net.has_edge(u, v))
        throw std::invalid_argument("edge (" + std::to_string(u) + "," +
                                    std::to_string(v) + ") is not present");
    return removal_probability(net.leave_prob(u), net.leave_prob(v));
}

double expected_edge_loss_one_step(const DecayingNetwork& net) {
    double total = 0.0;
    for (const Edge& e : net.alive_edges()) {
        total += removal_probability(net.leave_prob(e.u), net.leave_prob(e.v));
    }
    return total;
}

long realized_edge_loss(const StepRecord& record, const DecayingNetwork& net_before) {
    long degree_sum = 0;
    std::set<NodeId> leaving;
    for (NodeId w : record.leavers) {
        if (!net_before.is_alive(w))
            throw std::invalid_argument("record leaver " + std::to_string(w) +
                                        " is not alive in the pre-step network");
        degree_sum += static_cast<long>(net_before.alive_degree(w));
        leaving.insert(w);
    }
    long internal = 0;
    for (NodeId w : record.leavers) {
        for (const auto& nb : net_before.alive_neighbors(w)) {
            if (nb.id > w && leaving.count(nb.id)) ++internal;
        }
    }
    long loss = degree_sum - internal;
    if (loss != static_cast<long>(record.removed_edges.size()))
        throw std::invalid_argument("step record is inconsistent with the pre-step network");
    return loss;
}

namespace {

// Law of pi given alive, collapsed to a saturated mass and one atom below it.
struct TwoPointLaw {
    double m = 0.0;  // P(pi == 1)
    double mu = 0.0; // the sub-saturated value

    double mean() const { return m + (1.0 - m) * mu; }
    double second_moment() const { return m + (1.0 - m) * mu * mu; }
};

struct NeighborMix {
    double p_dead = 0.0;
    double p_stay = 0.0;
    double p_leave = 0.0;
    double a = 0.0; // (1 - E[pi | leave]) * (1 - delta)
};

struct GainLaw {
    double p_zero = 1.0;  // no alive neighbor leaves
    double p_force = 0.0; // every neighbor dead or leaving (and some leave)
    double p_mid = 0.0;
    double mid_gain = 0.0; // mean gain on the middle branch
};

// E[Delta] under independent neighbor states, with the exact xi = |C|/|R|
// term: DP over (r = alive count) tracking E[prod a ; |R|=r] and
// E[|C| prod a ; |R|=r]. An empty alive set contributes gain 0.
GainLaw gain_law(const std::vector<NeighborMix>& states) {
    const std::size_t d = states.size();
    std::vector<double> A(d + 1, 0.0), B(d + 1, 0.0);
    A[0] = 1.0;
    double p_zero = 1.0, p_all = 1.0, p_dead = 1.0;
    for (const auto& st : states) {
        std::vector<double> A2(d + 1, 0.0), B2(d + 1, 0.0);
        for (std::size_t r = 0; r <= d; ++r) {
            if (A[r] == 0.0 && B[r] == 0.0) continue;
            A2[r] += A[r] * st.p_dead;
            B2[r] += B[r] * st.p_dead;
            A2[r + 1] += A[r] * st.p_stay + A[r] * st.p_leave * st.a;
            B2[r + 1] += B[r] * st.p_stay + (B[r] + A[r]) * st.p_leave * st.a;
        }
        A.swap(A2);
        B.swap(B2);
        p_zero *= 1.0 - st.p_leave;
        p_all *= st.p_dead + st.p_leave;
        p_dead *= st.p_dead;
    }
    double expectation = 0.0;
    for (std::size_t r = 0; r <= d; ++r) {
        expectation += A[r];
        if (r > 0) expectation -= B[r] / static_cast<double>(r);
    }
    double e_delta = 1.0 - expectation;

    GainLaw law;
    law.p_zero = p_zero;
    law.p_force = p_all - p_dead;
    law.p_mid = std::max(0.0, 1.0 - law.p_zero - law.p_force);
    if (law.p_mid > 1e-15) {
        law.mid_gain = std::clamp((e_delta - law.p_force) / law.p_mid, 0.0, 1.0);
    }
    return law;
}

// Condition on surviving the round (the saturated mass leaves with
// certainty), then mix the three gain branches back into two points.
void advance(TwoPointLaw& law, const GainLaw& g) {
    double base = law.mu;
    double bumped = base + g.mid_gain;
    if (bumped >= 1.0) {
        law.m = g.p_force + g.p_mid;
        law.mu = base;
    } else {
        law.m = g.p_force;
        double mass = g.p_zero + g.p_mid;
        law.mu = mass > 1e-15 ? (g.p_zero * base + g.p_mid * bumped) / mass : base;
    }
}

} // namespace

ExpectationReport expected_edge_loss_horizon(const DecayingNetwork& net, int n) {
    if (n < 1) throw std::invalid_argument("horizon must be >= 1");

    const std::vector<NodeId> nodes = net.alive_nodes();
    const std::vector<Edge> edges = net.alive_edges();
    const std::size_t N = net.initial_node_count();

    std::vector<double> alive(N, 0.0);
    std::vector<TwoPointLaw> law(N);
    for (NodeId w : nodes) {
        alive[w] = 1.0;
        double p = net.leave_prob(w);
        law[w] = p >= 1.0 ? TwoPointLaw{1.0, 1.0} : TwoPointLaw{0.0, p};
    }
    struct EdgeState {
        double alive = 1.0;
        TwoPointLaw u_law, v_law; // endpoint laws given both endpoints alive
    };
    std::vector<EdgeState> estate(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        estate[i].u_law = law[edges[i].u];
        estate[i].v_law = law[edges[i].v];
    }

    ExpectationReport rep;
    rep.horizon = n;
    for (int j = 0; j < n; ++j) {
        double node_loss = 0.0;
        for (NodeId w : nodes) node_loss += alive[w] * law[w].mean();
        double edge_loss = 0.0;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            edge_loss += estate[i].alive * removal_probability(estate[i].u_law.mean(),
                                                               estate[i].v_law.mean());
        }
        rep.expected_node_loss.push_back(node_loss);
        rep.expected_edge_loss.push_back(edge_loss);

        // Unconditional per-neighbor mixes for this round.
        std::vector<NeighborMix> mix(N);
        for (NodeId u : nodes) {
            double pbar = law[u].mean();
            double q = alive[u] * pbar;
            mix[u].p_dead = 1.0 - alive[u];
            mix[u].p_stay = alive[u] - q;
            mix[u].p_leave = q;
            mix[u].a = pbar > 0.0 ? 1.0 - law[u].second_moment() / pbar : 1.0;
        }

        std::vector<GainLaw> node_gain(N);
        for (NodeId w : nodes) {
            std::vector<NeighborMix> states;
            for (const auto& nb : net.initial_neighbors(w)) {
                if (!net.is_alive(nb.id)) {
                    // left before the projection started
                    states.push_back({1.0, 0.0, 0.0, 0.0});
                    continue;
                }
                NeighborMix st = mix[nb.id];
                st.a *= 1.0 - nb.tie_strength;
                states.push_back(st);
            }
            node_gain[w] = gain_law(states);
        }
        std::vector<std::pair<GainLaw, GainLaw>> edge_gain(edges.size());
        for (std::size_t i = 0; i < edges.size(); ++i) {
            auto conditional = [&](NodeId self, NodeId partner) {
                std::vector<NeighborMix> states;
                for (const auto& nb : net.initial_neighbors(self)) {
                    if (nb.id == partner) {
                        // alive by conditioning: counts in |R|, never leaves
                        states.push_back({0.0, 1.0, 0.0, 0.0});
                        continue;
                    }
                    if (!net.is_alive(nb.id)) {
                        states.push_back({1.0, 0.0, 0.0, 0.0});
                        continue;
                    }
                    NeighborMix st = mix[nb.id];
                    st.a *= 1.0 - nb.tie_strength;
                    states.push_back(st);
                }
                return gain_law(states);
            };
            edge_gain[i] = {conditional(edges[i].u, edges[i].v),
                            conditional(edges[i].v, edges[i].u)};
        }

        for (NodeId w : nodes) {
            alive[w] *= 1.0 - law[w].mean();
            advance(law[w], node_gain[w]);
        }
        for (std::size_t i = 0; i < edges.size(); ++i) {
            estate[i].alive *=
                (1.0 - estate[i].u_law.mean()) * (1.0 - estate[i].v_law.mean());
            advance(estate[i].u_law, edge_gain[i].first);
            advance(estate[i].v_law, edge_gain[i].second);
        }
    }
    for (double x : rep.expected_node_loss) rep.cumulative_node_loss += x;
    for (double x : rep.expected_edge_loss) rep.cumulative_edge_loss += x;
    return rep;
}

ExpectationReport monte_carlo_horizon(const DecayingNetwork& net, int n, int runs,
                                      std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("horizon must be >= 1");
    SimulationConfig cfg;
    cfg.seed = seed;
    cfg.max_steps = n;
    EnsembleReport ens = ensemble_stats(net, cfg, runs);

    ExpectationReport rep;
    rep.horizon = n;
    rep.expected_node_loss.assign(static_cast<std::size_t>(n), 0.0);
    rep.expected_edge_loss.assign(static_cast<std::size_t>(n), 0.0);
    for (std::size_t s = 0; s < ens.mean_leavers.size() && s < static_cast<std::size_t>(n);
         ++s) {
        rep.expected_node_loss[s] = ens.mean_leavers[s];
        rep.expected_edge_loss[s] = ens.mean_removed_edges[s];
    }
    for (double x : rep.expected_node_loss) rep.cumulative_node_loss += x;
    for (double x : rep.expected_edge_loss) rep.cumulative_edge_loss += x;
    return rep;
}

} // namespace netdecay
