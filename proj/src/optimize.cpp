#include "netdecay/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace netdecay {

namespace {

std::vector<char> group_mask(const DecayingNetwork& net, std::span<const NodeId> group) {
    std::vector<char> mask(net.initial_node_count(), 0);
    for (NodeId w : group) {
        if (!net.is_alive(w))
            throw std::invalid_argument("objective set contains non-alive node " +
                                        std::to_string(w));
        mask[w] = 1;
    }
    return mask;
}

double objective_on_mask(const DecayingNetwork& net, const std::vector<char>& mask,
                         bool additive) {
    const int next_step = net.time() + 1;
    double total = 0.0;
    for (NodeId w : net.alive_nodes()) {
        if (mask[w]) continue;
        std::size_t neighborhood = 0;
        std::size_t cohort = 0;
        double product = 1.0;
        double additive_sum = 0.0;
        for (const auto& nb : net.initial_neighbors(w)) {
            if (!net.is_alive(nb.id)) continue;
            ++neighborhood;
            if (!mask[nb.id]) continue;
            ++cohort;
            double pi = net.leave_prob(nb.id);
            double delta = net.tie_strength_at(w, nb.id, next_step);
            if (additive) {
                additive_sum += 1.0 - (1.0 - pi) * (1.0 - delta);
            } else {
                product *= (1.0 - pi) * (1.0 - delta);
            }
        }
        if (cohort == 0) continue;
        if (additive) {
            total += additive_sum;
        } else {
            double xi = static_cast<double>(cohort) / static_cast<double>(neighborhood);
            total += 1.0 - (1.0 - xi) * product;
        }
    }
    return total;
}

std::uint64_t subset_count(std::size_t n, int k, std::uint64_t cap) {
    // Total subsets of size 1..k, saturating just above the cap.
    long double total = 0.0L;
    long double binom = 1.0L;
    for (int i = 1; i <= k; ++i) {
        binom = binom * static_cast<long double>(n - static_cast<std::size_t>(i) + 1) /
                static_cast<long double>(i);
        total += binom;
        if (total > static_cast<long double>(cap) * 2.0L)
            return cap * 2;
    }
    return static_cast<std::uint64_t>(total);
}

void check_budget(const DecayingNetwork& net, int k) {
    if (k < 1) throw std::invalid_argument("budget k must be >= 1");
    if (static_cast<std::size_t>(k) > net.alive_node_count())
        throw std::invalid_argument("budget k exceeds the number of alive nodes");
}

struct Evaluator {
    const DecayingNetwork& net;
    std::vector<char> mask;
    std::uint64_t evaluations = 0;

    explicit Evaluator(const DecayingNetwork& n)
        : net(n), mask(n.initial_node_count(), 0) {}

    double with(std::span<const NodeId> group) {
        std::fill(mask.begin(), mask.end(), 0);
        for (NodeId w : group) mask[w] = 1;
        ++evaluations;
        return objective_on_mask(net, mask, false);
    }
    double with_extra(std::span<const NodeId> group, NodeId extra) {
        std::fill(mask.begin(), mask.end(), 0);
        for (NodeId w : group) mask[w] = 1;
        mask[extra] = 1;
        ++evaluations;
        return objective_on_mask(net, mask, false);
    }
};

// Lexicographic enumeration of size-k subsets of `pool`.
template <typename Fn>
void for_each_subset(const std::vector<NodeId>& pool, int k, Fn&& fn) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
    std::vector<NodeId> subset(static_cast<std::size_t>(k));
    const std::size_t n = pool.size();
    while (true) {
        for (int i = 0; i < k; ++i) subset[static_cast<std::size_t>(i)] = pool[idx[static_cast<std::size_t>(i)]];
        fn(subset);
        int pos = k - 1;
        while (pos >= 0 &&
               idx[static_cast<std::size_t>(pos)] == n - static_cast<std::size_t>(k - pos)) {
            --pos;
        }
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < k; ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
}

} // namespace

double leave_objective(const DecayingNetwork& net, std::span<const NodeId> group) {
    return objective_on_mask(net, group_mask(net, group), false);
}

double leave_objective_additive(const DecayingNetwork& net, std::span<const NodeId> group) {
    return objective_on_mask(net, group_mask(net, group), true);
}

SeedSelection greedy_maximize(const DecayingNetwork& net, int k) {
    check_budget(net, k);
    Evaluator eval(net);
    const std::vector<NodeId> pool = net.alive_nodes();

    SeedSelection sel;
    sel.budget = k;
    sel.mode = OptimizeMode::Maximize;
    double current = 0.0;
    std::vector<char> in_set(net.initial_node_count(), 0);
    for (int round = 0; round < k; ++round) {
        double best_gain = 0.0;
        NodeId best = 0;
        bool first = true;
        for (NodeId v : pool) {
            if (in_set[v]) continue;
            double gain = eval.with_extra(sel.chosen, v) - current;
            if (first || gain > best_gain) { // strict: ties keep the lowest id
                first = false;
                best_gain = gain;
                best = v;
            }
        }
        // The budget is |A| <= k. A member of A stops counting as a survivor,
        // so marginals can go negative once a pick would swallow its own
        // contribution; adding it could only lower the objective.
        if (first || best_gain <= 0.0) break;
        sel.chosen.push_back(best);
        in_set[best] = 1;
        sel.marginal_gains.push_back(best_gain);
        current += best_gain;
    }
    sel.pick_order = sel.chosen;
    std::sort(sel.chosen.begin(), sel.chosen.end());
    sel.objective = leave_objective(net, sel.chosen);
    sel.objective_evaluations = eval.evaluations;
    return sel;
}

SeedSelection lazy_marginals(const DecayingNetwork& net, int k) {
    check_budget(net, k);
    Evaluator eval(net);
    const std::vector<NodeId> pool = net.alive_nodes();

    // Max-heap of stale upper bounds; submodularity keeps them valid.
    struct Entry {
        double bound;
        NodeId node;
        int round; // round the bound was computed in
    };
    auto cmp = [](const Entry& a, const Entry& b) {
        if (a.bound != b.bound) return a.bound < b.bound;
        return a.node > b.node; // lower id wins ties, matching plain greedy
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);

    SeedSelection sel;
    sel.budget = k;
    sel.mode = OptimizeMode::Maximize;
    double current = 0.0;
    for (NodeId v : pool) heap.push({eval.with_extra({}, v), v, 0});

    for (int round = 0; round < k && !heap.empty(); ++round) {
        bool stopped = false;
        while (true) {
            Entry top = heap.top();
            if (top.round == round) {
                if (top.bound <= 0.0) { // same stopping rule as plain greedy
                    stopped = true;
                    break;
                }
                heap.pop();
                sel.chosen.push_back(top.node);
                sel.marginal_gains.push_back(top.bound);
                current += top.bound;
                break;
            }
            heap.pop();
            top.bound = eval.with_extra(sel.chosen, top.node) - current;
            top.round = round;
            heap.push(top);
        }
        if (stopped) break;
    }
    sel.pick_order = sel.chosen;
    std::sort(sel.chosen.begin(), sel.chosen.end());
    sel.objective = leave_objective(net, sel.chosen);
    sel.objective_evaluations = eval.evaluations;
    return sel;
}

SeedSelection greedy_minimize(const DecayingNetwork& net, int k,
                              std::uint64_t enumeration_cap) {
    check_budget(net, k);
    const std::vector<NodeId> pool = net.alive_nodes();

    // Exact within the cap; the cited polynomial-time result covers only the
    // unconstrained problem, so above the cap this falls back to greedy.
    long double binom = 1.0L;
    for (int i = 1; i <= k; ++i)
        binom = binom * static_cast<long double>(pool.size() - static_cast<std::size_t>(i) + 1) /
                static_cast<long double>(i);
    if (binom <= static_cast<long double>(enumeration_cap)) {
        Evaluator eval(net);
        SeedSelection sel;
        sel.budget = k;
        sel.mode = OptimizeMode::Minimize;
        bool first = true;
        for_each_subset(pool, k, [&](const std::vector<NodeId>& subset) {
            double value = eval.with(subset);
            if (first || value < sel.objective) {
                first = false;
                sel.objective = value;
                sel.chosen = subset;
            }
        });
        sel.objective_evaluations = eval.evaluations;
        return sel;
    }

    Evaluator eval(net);
    SeedSelection sel;
    sel.budget = k;
    sel.mode = OptimizeMode::Minimize;
    double current = 0.0;
    std::vector<char> in_set(net.initial_node_count(), 0);
    for (int round = 0; round < k; ++round) {
        double best_gain = 0.0;
        NodeId best = 0;
        bool first = true;
        for (NodeId v : pool) {
            if (in_set[v]) continue;
            double gain = eval.with_extra(sel.chosen, v) - current;
            if (first || gain < best_gain) {
                first = false;
                best_gain = gain;
                best = v;
            }
        }
        sel.chosen.push_back(best);
        in_set[best] = 1;
        sel.marginal_gains.push_back(best_gain);
        current += best_gain;
    }
    sel.pick_order = sel.chosen;
    std::sort(sel.chosen.begin(), sel.chosen.end());
    sel.objective = leave_objective(net, sel.chosen);
    sel.objective_evaluations = eval.evaluations;
    return sel;
}

SeedSelection brute_force_optimum(const DecayingNetwork& net, int k, OptimizeMode mode,
                                  std::uint64_t enumeration_cap) {
    check_budget(net, k);
    if (static_cast<std::size_t>(k) >= net.alive_node_count())
        throw std::invalid_argument("certified optimization needs k < |V|");
    const std::vector<NodeId> pool = net.alive_nodes();
    std::uint64_t needed = subset_count(pool.size(), k, enumeration_cap);
    if (needed > enumeration_cap)
        throw std::invalid_argument("enumeration needs " + std::to_string(needed) +
                                    " subsets, above the cap of " +
                                    std::to_string(enumeration_cap) +
                                    " (raise NETDECAY_ENUM_CAP)");

    Evaluator eval(net);
    SeedSelection sel;
    sel.budget = k;
    sel.mode = mode;
    bool first = true;
    auto consider = [&](const std::vector<NodeId>& subset) {
        double value = eval.with(subset);
        bool better = mode == OptimizeMode::Maximize ? value > sel.objective
                                                     : value < sel.objective;
        if (first || better) {
            first = false;
            sel.objective = value;
            sel.chosen = subset;
        }
    };
    if (mode == OptimizeMode::Maximize) {
        for (int size = 1; size <= k; ++size) for_each_subset(pool, size, consider);
    } else {
        for_each_subset(pool, k, consider);
    }
    sel.objective_evaluations = eval.evaluations;
    return sel;
}

void certify(const DecayingNetwork& net, SeedSelection& selection,
             std::uint64_t enumeration_cap) {
    SeedSelection opt =
        brute_force_optimum(net, selection.budget, selection.mode, enumeration_cap);
    OptimizeCertificate cert;
    cert.optimal_value = opt.objective;
    if (selection.mode == OptimizeMode::Maximize) {
        cert.ratio = opt.objective > 0.0 ? selection.objective / opt.objective : 1.0;
    } else {
        cert.ratio = selection.objective > 0.0 ? opt.objective / selection.objective : 1.0;
    }
    selection.certificate = cert;
}

} // namespace netdecay
