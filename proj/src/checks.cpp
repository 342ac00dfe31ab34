#include "netdecay/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "netdecay/rng.hpp"

namespace netdecay {

namespace {

void record_violation(CheckReport& rep, const std::string& detail) {
    rep.passed = false;
    if (rep.violations.size() < kMaxViolationDetails) rep.violations.push_back(detail);
}

void check_range(const NestedPair& pair) {
    if (pair.sub_size > pair.values.size())
        throw std::invalid_argument("nested pair subset larger than the set");
    for (double v : pair.values) {
        if (!(v > 0.0 && v <= 1.0))
            throw std::invalid_argument("probability outside (0,1] in nested pair");
    }
}

std::string subset_string(std::uint32_t mask, const std::vector<NodeId>& ids) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (!(mask & (1u << i))) continue;
        if (!first) os << ",";
        os << ids[i];
        first = false;
    }
    os << "}";
    return os.str();
}

} // namespace

std::vector<NestedPair> random_nested_pairs(std::uint64_t seed, std::size_t count,
                                            std::size_t max_size) {
    if (max_size == 0) throw std::invalid_argument("max_size must be positive");
    std::vector<NestedPair> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t size =
            1 + static_cast<std::size_t>(unit_draw(seed, Stream::PairGen, i, 0) *
                                         static_cast<double>(max_size));
        size = std::min(size, max_size);
        NestedPair pair;
        pair.values.reserve(size);
        for (std::size_t j = 0; j < size; ++j) {
            pair.values.push_back(
                open_closed_draw(seed, Stream::PairGen, i, j + 1, 0.0, 1.0));
        }
        pair.sub_size = static_cast<std::size_t>(
            unit_draw(seed, Stream::PairGen, i, size + 1) *
            static_cast<double>(size + 1));
        pair.sub_size = std::min(pair.sub_size, size);
        out.push_back(std::move(pair));
    }
    return out;
}

CheckReport check_sum_order(const std::vector<NestedPair>& pairs) {
    CheckReport rep;
    rep.claim = "lemma1";
    for (const auto& pair : pairs) {
        check_range(pair);
        double sub = 0.0, super = 0.0;
        for (std::size_t i = 0; i < pair.values.size(); ++i) {
            super += pair.values[i];
            if (i < pair.sub_size) sub += pair.values[i];
        }
        ++rep.instances_checked;
        if (sub > super + kCheckSlack) {
            std::ostringstream os;
            os << "sum over subset " << sub << " exceeds superset " << super;
            record_violation(rep, os.str());
        }
    }
    return rep;
}

CheckReport check_product_order(const std::vector<NestedPair>& pairs) {
    CheckReport rep;
    rep.claim = "lemma2";
    for (const auto& pair : pairs) {
        check_range(pair);
        double sub = 1.0, super = 1.0;
        for (std::size_t i = 0; i < pair.values.size(); ++i) {
            super *= pair.values[i];
            if (i < pair.sub_size) sub *= pair.values[i];
        }
        ++rep.instances_checked;
        if (sub < super - kCheckSlack) {
            std::ostringstream os;
            os << "product over subset " << sub << " below superset " << super;
            record_violation(rep, os.str());
        }
    }
    return rep;
}

namespace {

// Exhaustive (S, T, v) walk over subsets of w's alive neighborhood.
// gain(mask) must map a cohort subset to its probability gain.
template <typename GainFn>
CheckReport subset_marginal_check(const DecayingNetwork& net, NodeId w,
                                  const std::string& claim, bool expect_equality,
                                  GainFn&& gain) {
    CheckReport rep;
    rep.claim = claim;
    auto neighbors = net.alive_neighbors(w);
    if (!net.is_alive(w))
        throw std::invalid_argument("node " + std::to_string(w) + " already left");
    if (neighbors.size() > 7)
        throw std::invalid_argument("degree " + std::to_string(neighbors.size()) +
                                    " exceeds the exhaustive-check cap of 7");

    const std::size_t d = neighbors.size();
    const std::uint32_t full = (1u << d) - 1u;
    std::vector<NodeId> ids(d);
    for (std::size_t i = 0; i < d; ++i) ids[i] = neighbors[i].id;

    std::vector<double> delta(full + 1u, 0.0);
    for (std::uint32_t mask = 0; mask <= full; ++mask) delta[mask] = gain(mask);

    for (std::size_t vi = 0; vi < d; ++vi) {
        const std::uint32_t vbit = 1u << vi;
        const std::uint32_t rest = full & ~vbit;
        // T runs over subsets of the neighborhood minus v, S over subsets of T.
        for (std::uint32_t t_mask = rest;; t_mask = (t_mask - 1) & rest) {
            for (std::uint32_t s_mask = t_mask;; s_mask = (s_mask - 1) & t_mask) {
                if (s_mask != t_mask) {
                    ++rep.instances_checked;
                    double lhs = delta[s_mask | vbit] - delta[s_mask];
                    double rhs = delta[t_mask | vbit] - delta[t_mask];
                    if (expect_equality) {
                        if (std::abs(lhs - rhs) > kCheckSlack) {
                            std::ostringstream os;
                            os << "node " << w << " S=" << subset_string(s_mask, ids)
                               << " T=" << subset_string(t_mask, ids) << " v=" << ids[vi]
                               << ": marginals " << lhs << " vs " << rhs;
                            record_violation(rep, os.str());
                        }
                    } else {
                        if (lhs - rhs < -kCheckSlack) {
                            std::ostringstream os;
                            os << "node " << w << " S=" << subset_string(s_mask, ids)
                               << " T=" << subset_string(t_mask, ids) << " v=" << ids[vi]
                               << ": marginal " << lhs << " below " << rhs;
                            record_violation(rep, os.str());
                        } else if (std::abs(lhs - rhs) <= kCheckSlack) {
                            // Strictness saturates when delta = 1 caps both sides.
                            ++rep.boundary_equalities;
                        }
                    }
                }
                if (s_mask == 0) break;
            }
            if (t_mask == 0) break;
        }
    }
    return rep;
}

} // namespace

CheckReport check_thm1(const DecayingNetwork& net, NodeId w) {
    auto neighbors = net.alive_neighbors(w);
    const int next_step = net.time() + 1;
    std::vector<double> term(neighbors.size(), 0.0);
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
        term[i] = gain_single(net.leave_prob(neighbors[i].id),
                              net.tie_strength_at(w, neighbors[i].id, next_step));
    }
    return subset_marginal_check(net, w, "thm1", /*expect_equality=*/true,
                                 [&](std::uint32_t mask) {
                                     double sum = 0.0;
                                     for (std::size_t i = 0; i < term.size(); ++i) {
                                         if (mask & (1u << i)) sum += term[i];
                                     }
                                     return sum;
                                 });
}

CheckReport check_thm3(const DecayingNetwork& net, NodeId w) {
    auto neighbors = net.alive_neighbors(w);
    const int next_step = net.time() + 1;
    const double degree = static_cast<double>(neighbors.size());
    std::vector<double> factor(neighbors.size(), 1.0);
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
        factor[i] = (1.0 - net.leave_prob(neighbors[i].id)) *
                    (1.0 - net.tie_strength_at(w, neighbors[i].id, next_step));
    }
    return subset_marginal_check(
        net, w, "thm3", /*expect_equality=*/false, [&](std::uint32_t mask) {
            if (mask == 0) return 0.0;
            double product = 1.0;
            int size = 0;
            for (std::size_t i = 0; i < factor.size(); ++i) {
                if (mask & (1u << i)) {
                    product *= factor[i];
                    ++size;
                }
            }
            double xi = static_cast<double>(size) / degree;
            return 1.0 - (1.0 - xi) * product;
        });
}

CheckReport check_thm2(const SimulationTrace& trace) {
    CheckReport rep;
    rep.claim = "thm2";
    const DecayingNetwork& net = trace.final_network;
    std::vector<double> last(net.initial_node_count());
    for (NodeId w = 0; w < net.initial_node_count(); ++w) {
        last[w] = net.state(w).initial_prob;
    }
    for (const StepRecord& rec : trace.steps()) {
        for (const auto& [w, pi] : rec.prob_snapshot) {
            ++rep.instances_checked;
            if (pi < last[w]) {
                std::ostringstream os;
                os << "node " << w << " dropped from " << last[w] << " to " << pi
                   << " at step " << rec.step;
                record_violation(rep, os.str());
            }
            last[w] = pi;
        }
    }
    return rep;
}

} // namespace netdecay
