#include "netdecay/network.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "netdecay/rng.hpp"

namespace netdecay {

namespace {

std::string node_pair(NodeId u, NodeId v) {
    return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

} // namespace

InitialProbabilitySpec InitialProbabilitySpec::constant_prob(double c) {
    InitialProbabilitySpec s;
    s.kind = Kind::Constant;
    s.constant = c;
    s.validate();
    return s;
}

InitialProbabilitySpec InitialProbabilitySpec::uniform(double lo, double hi) {
    InitialProbabilitySpec s;
    s.kind = Kind::Uniform;
    s.lo = lo;
    s.hi = hi;
    s.validate();
    return s;
}

InitialProbabilitySpec InitialProbabilitySpec::inverse_degree(double a) {
    InitialProbabilitySpec s;
    s.kind = Kind::InverseDegree;
    s.scale = a;
    s.validate();
    return s;
}

InitialProbabilitySpec
InitialProbabilitySpec::from_values(std::vector<std::pair<NodeId, double>> values) {
    InitialProbabilitySpec s;
    s.kind = Kind::PerNode;
    s.per_node = std::move(values);
    s.validate();
    return s;
}

InitialProbabilitySpec InitialProbabilitySpec::parse(const std::string& token) {
    auto split = [](const std::string& str) {
        std::vector<std::string> parts;
        std::size_t pos = 0;
        while (true) {
            auto next = str.find(':', pos);
            if (next == std::string::npos) {
                parts.push_back(str.substr(pos));
                break;
            }
            parts.push_back(str.substr(pos, next - pos));
            pos = next + 1;
        }
        return parts;
    };
    auto to_real = [&token](const std::string& s) {
        try {
            std::size_t used = 0;
            double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw std::invalid_argument("bad number '" + s + "' in pi0 spec '" + token + "'");
        }
    };

    auto parts = split(token);
    const std::string& head = parts.front();
    if (head == "const" && parts.size() == 2) {
        return constant_prob(to_real(parts[1]));
    }
    if (head == "uniform" && parts.size() == 3) {
        return uniform(to_real(parts[1]), to_real(parts[2]));
    }
    if (head == "invdeg" && parts.size() == 2) {
        return inverse_degree(to_real(parts[1]));
    }
    if (head == "file") {
        throw std::invalid_argument(
            "pi0 spec 'file:...' must be resolved through the io layer");
    }
    throw std::invalid_argument(
        "unrecognized pi0 spec '" + token +
        "' (expected const:c, uniform:lo:hi, invdeg:a or file:path)");
}

void InitialProbabilitySpec::validate() const {
    switch (kind) {
    case Kind::Constant:
        if (!(constant > 0.0 && constant <= 1.0))
            throw std::invalid_argument("constant pi0 must be in (0,1]");
        break;
    case Kind::Uniform:
        if (!(lo >= 0.0 && lo < hi && hi <= 1.0))
            throw std::invalid_argument("uniform pi0 needs 0 <= lo < hi <= 1");
        break;
    case Kind::InverseDegree:
        if (!(scale > 0.0))
            throw std::invalid_argument("invdeg pi0 needs a > 0");
        break;
    case Kind::PerNode:
        for (const auto& [node, p] : per_node) {
            if (!(p > 0.0 && p <= 1.0))
                throw std::invalid_argument("pi0 for node " + std::to_string(node) +
                                            " must be in (0,1]");
        }
        break;
    }
}

bool DecayingNetwork::is_alive(NodeId w) const {
    check_node(w);
    return nodes_[w].alive();
}

bool DecayingNetwork::alive_at(NodeId w, int t) const {
    check_node(w);
    const auto& lt = nodes_[w].leave_time;
    return !lt.has_value() || *lt > t;
}

const NodeState& DecayingNetwork::state(NodeId w) const {
    check_node(w);
    return nodes_[w];
}

std::span<const Neighbor> DecayingNetwork::initial_neighbors(NodeId w) const {
    check_node(w);
    return adjacency_[w];
}

std::vector<Neighbor> DecayingNetwork::alive_neighbors(NodeId w) const {
    check_node(w);
    std::vector<Neighbor> out;
    out.reserve(adjacency_[w].size());
    for (const auto& nb : adjacency_[w]) {
        if (nodes_[nb.id].alive()) out.push_back(nb);
    }
    return out;
}

std::size_t DecayingNetwork::alive_degree(NodeId w) const {
    check_node(w);
    std::size_t d = 0;
    for (const auto& nb : adjacency_[w]) {
        if (nodes_[nb.id].alive()) ++d;
    }
    return d;
}

std::vector<NodeId> DecayingNetwork::alive_nodes() const {
    std::vector<NodeId> out;
    out.reserve(alive_nodes_);
    for (NodeId w = 0; w < nodes_.size(); ++w) {
        if (nodes_[w].alive()) out.push_back(w);
    }
    return out;
}

std::vector<Edge> DecayingNetwork::alive_edges() const {
    std::vector<Edge> out;
    out.reserve(alive_edges_);
    for (NodeId u = 0; u < nodes_.size(); ++u) {
        if (!nodes_[u].alive()) continue;
        for (const auto& nb : adjacency_[u]) {
            if (nb.id > u && nodes_[nb.id].alive())
                out.emplace_back(u, nb.id, nb.tie_strength);
        }
    }
    return out;
}

bool DecayingNetwork::has_edge(NodeId u, NodeId v) const {
    check_node(u);
    check_node(v);
    if (!nodes_[u].alive() || !nodes_[v].alive()) return false;
    for (const auto& nb : adjacency_[u]) {
        if (nb.id == v) return true;
    }
    return false;
}

double DecayingNetwork::tie_strength_at(NodeId u, NodeId v, int step) const {
    check_node(u);
    check_node(v);
    NodeId a = std::min(u, v), b = std::max(u, v);
    for (const auto& ov : overrides_) {
        if (ov.step == step && ov.u == a && ov.v == b) return ov.tie_strength;
    }
    for (const auto& nb : adjacency_[u]) {
        if (nb.id == v) return nb.tie_strength;
    }
    throw std::invalid_argument("no edge " + node_pair(u, v));
}

const StepRecord& DecayingNetwork::commit_step(
    std::vector<NodeId> leavers,
    const std::vector<std::pair<NodeId, double>>& updated_probs) {
    std::sort(leavers.begin(), leavers.end());
    leavers.erase(std::unique(leavers.begin(), leavers.end()), leavers.end());
    for (NodeId w : leavers) {
        if (!is_alive(w))
            throw std::invalid_argument("leaver " + std::to_string(w) + " is not alive");
    }

    StepRecord rec;
    rec.step = time_ + 1;
    rec.leavers = leavers;

    std::unordered_set<NodeId> leaving(leavers.begin(), leavers.end());
    for (NodeId u : leavers) {
        for (const auto& nb : adjacency_[u]) {
            if (!nodes_[nb.id].alive()) continue;
            if (leaving.count(nb.id) && nb.id < u) continue; // counted once
            rec.removed_edges.push_back(Edge{u, nb.id, nb.tie_strength}.normalized());
        }
    }
    std::sort(rec.removed_edges.begin(), rec.removed_edges.end());

    for (NodeId w : leavers) {
        nodes_[w].leave_time = rec.step;
    }
    alive_nodes_ -= leavers.size();
    alive_edges_ -= rec.removed_edges.size();

    for (const auto& [w, pi] : updated_probs) {
        check_node(w);
        if (!nodes_[w].alive())
            throw std::invalid_argument("probability update for non-survivor " +
                                        std::to_string(w));
        if (!(pi >= 0.0 && pi <= 1.0))
            throw std::invalid_argument("updated probability out of [0,1]");
        nodes_[w].leave_prob = pi;
    }

    for (NodeId w = 0; w < nodes_.size(); ++w) {
        if (nodes_[w].alive()) rec.prob_snapshot.emplace_back(w, nodes_[w].leave_prob);
    }

    time_ = rec.step;
    history_.push_back(std::move(rec));
    return history_.back();
}

DecayingNetwork DecayingNetwork::snapshot_at(int t) const {
    if (t < 0 || t > time_)
        throw std::invalid_argument("snapshot time out of range");
    DecayingNetwork out;
    out.time_ = t;
    out.adjacency_ = adjacency_;
    out.overrides_ = overrides_;
    out.initial_edges_ = initial_edges_;
    out.nodes_.resize(nodes_.size());
    out.history_.assign(history_.begin(), history_.begin() + t);

    for (NodeId w = 0; w < nodes_.size(); ++w) {
        NodeState st;
        st.initial_prob = nodes_[w].initial_prob;
        st.leave_prob = nodes_[w].initial_prob;
        if (nodes_[w].leave_time && *nodes_[w].leave_time <= t) {
            st.leave_time = nodes_[w].leave_time;
            st.leave_prob = nodes_[w].leave_prob; // frozen pre-leave value
        }
        out.nodes_[w] = st;
    }
    if (t > 0) {
        for (const auto& [w, pi] : history_[t - 1].prob_snapshot) {
            out.nodes_[w].leave_prob = pi;
        }
    }
    out.alive_nodes_ = 0;
    for (const auto& st : out.nodes_) {
        if (st.alive()) ++out.alive_nodes_;
    }
    std::size_t removed = 0;
    for (int s = 0; s < t; ++s) removed += history_[s].removed_edges.size();
    out.alive_edges_ = initial_edges_ - removed;
    return out;
}

void DecayingNetwork::check_node(NodeId w) const {
    if (w >= nodes_.size())
        throw std::invalid_argument("unknown node " + std::to_string(w));
}

DecayingNetwork build_network(std::span<const Edge> edges,
                              const InitialProbabilitySpec& init,
                              std::uint64_t seed,
                              std::vector<TieOverride> overrides) {
    if (edges.empty()) throw std::invalid_argument("edge list is empty");
    init.validate();

    NodeId max_id = 0;
    std::set<std::pair<NodeId, NodeId>> seen;
    for (const auto& e : edges) {
        if (e.u == e.v)
            throw std::invalid_argument("self-loop at node " + std::to_string(e.u));
        if (!(e.tie_strength > 0.0 && e.tie_strength <= 1.0))
            throw std::invalid_argument("tie strength " + std::to_string(e.tie_strength) +
                                        " on edge " + node_pair(e.u, e.v) +
                                        " outside (0,1]");
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert(key).second)
            throw std::invalid_argument("duplicate edge " + node_pair(e.u, e.v));
        max_id = std::max({max_id, e.u, e.v});
    }

    DecayingNetwork net;
    const std::size_t n = static_cast<std::size_t>(max_id) + 1;
    net.nodes_.resize(n);
    net.adjacency_.resize(n);
    for (const auto& e : edges) {
        net.adjacency_[e.u].push_back({e.v, e.tie_strength});
        net.adjacency_[e.v].push_back({e.u, e.tie_strength});
    }
    for (auto& nbrs : net.adjacency_) {
        std::sort(nbrs.begin(), nbrs.end(),
                  [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
    }
    for (NodeId w = 0; w < n; ++w) {
        if (net.adjacency_[w].empty())
            throw std::invalid_argument("node " + std::to_string(w) +
                                        " is isolated at t=0");
    }

    std::map<NodeId, double> explicit_probs;
    if (init.kind == InitialProbabilitySpec::Kind::PerNode) {
        for (const auto& [w, p] : init.per_node) {
            if (w >= n)
                throw std::invalid_argument("pi0 given for unknown node " +
                                            std::to_string(w));
            if (!explicit_probs.emplace(w, p).second)
                throw std::invalid_argument("pi0 given twice for node " +
                                            std::to_string(w));
        }
        if (explicit_probs.size() != n)
            throw std::invalid_argument("pi0 file must cover every node");
    }

    for (NodeId w = 0; w < n; ++w) {
        double p = 0.0;
        switch (init.kind) {
        case InitialProbabilitySpec::Kind::Constant:
            p = init.constant;
            break;
        case InitialProbabilitySpec::Kind::Uniform:
            p = open_closed_draw(seed, Stream::InitialProb, w, 0, init.lo, init.hi);
            break;
        case InitialProbabilitySpec::Kind::InverseDegree:
            p = std::min(1.0, init.scale / static_cast<double>(net.adjacency_[w].size()));
            break;
        case InitialProbabilitySpec::Kind::PerNode:
            p = explicit_probs.at(w);
            break;
        }
        net.nodes_[w].initial_prob = p;
        net.nodes_[w].leave_prob = p;
    }

    for (auto& ov : overrides) {
        if (ov.u > ov.v) std::swap(ov.u, ov.v);
        bool found = false;
        for (const auto& nb : net.adjacency_[ov.u]) {
            if (nb.id == ov.v) found = true;
        }
        if (!found)
            throw std::invalid_argument("tie override for missing edge " +
                                        node_pair(ov.u, ov.v));
        if (!(ov.tie_strength > 0.0 && ov.tie_strength <= 1.0))
            throw std::invalid_argument("tie override outside (0,1]");
    }
    std::sort(overrides.begin(), overrides.end(),
              [](const TieOverride& a, const TieOverride& b) {
                  return std::tie(a.step, a.u, a.v) < std::tie(b.step, b.u, b.v);
              });
    net.overrides_ = std::move(overrides);

    net.alive_nodes_ = n;
    net.alive_edges_ = edges.size();
    net.initial_edges_ = edges.size();
    return net;
}

std::pair<std::vector<NodeId>, std::vector<NodeId>>
neighbor_partition(const DecayingNetwork& net, NodeId w, int t) {
    if (t < 1 || t > net.time())
        throw std::invalid_argument("step " + std::to_string(t) +
                                    " is not covered by the history");
    if (!net.alive_at(w, t))
        throw std::invalid_argument("node " + std::to_string(w) +
                                    " did not survive step " + std::to_string(t));

    std::vector<NodeId> left, stayed;
    for (const auto& nb : net.initial_neighbors(w)) {
        const auto& lt = net.state(nb.id).leave_time;
        if (lt && *lt == t) {
            left.push_back(nb.id);
        } else if (!lt || *lt > t) {
            stayed.push_back(nb.id);
        }
    }
    return {std::move(left), std::move(stayed)};
}

bool is_decaying(std::span<const StepRecord> history) {
    std::set<std::pair<NodeId, NodeId>> removed_before;
    for (std::size_t i = 0; i < history.size(); ++i) {
        const StepRecord& rec = history[i];
        std::set<NodeId> alive;
        for (const auto& [w, pi] : rec.prob_snapshot) {
            if (!alive.insert(w).second) return false;
            (void)pi;
        }
        for (NodeId w : rec.leavers) {
            if (alive.count(w)) return false; // leavers cannot survive
        }
        std::set<NodeId> leaving(rec.leavers.begin(), rec.leavers.end());
        for (const auto& e : rec.removed_edges) {
            if (!leaving.count(e.u) && !leaving.count(e.v)) return false;
            if (!removed_before.insert({e.u, e.v}).second) return false;
        }
        if (i == 0) continue;

        const StepRecord& prev = history[i - 1];
        if (rec.step != prev.step + 1) return false;
        std::set<NodeId> prev_alive;
        for (const auto& [w, pi] : prev.prob_snapshot) {
            prev_alive.insert(w);
            (void)pi;
        }
        // V^t = V^{t-1} minus the leavers, so node sets are nested.
        if (alive.size() + rec.leavers.size() != prev_alive.size()) return false;
        for (NodeId w : alive) {
            if (!prev_alive.count(w)) return false;
        }
        for (NodeId w : rec.leavers) {
            if (!prev_alive.count(w)) return false;
        }
        for (const auto& e : rec.removed_edges) {
            if (!prev_alive.count(e.u) || !prev_alive.count(e.v)) return false;
        }
    }
    return true;
}

} // namespace netdecay
