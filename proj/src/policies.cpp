#include "socialucb/policies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace socialucb {

std::string_view to_string(PolicyKind p) {
    switch (p) {
        case PolicyKind::SocialUCB: return "social_ucb";
        case PolicyKind::RandomWalk: return "random_walk";
        case PolicyKind::ExploitOnly: return "exploit_only";
        case PolicyKind::MABOnly: return "mab_only";
    }
    return "?";
}

std::optional<PolicyKind> parse_policy(std::string_view name) {
    for (PolicyKind p : kAllPolicies) {
        if (to_string(p) == name) return p;
    }
    return std::nullopt;
}

namespace {

// Pulls `count` distinct elements out of `pool` by partial Fisher-Yates.
std::vector<NodeId> draw_without_replacement(std::vector<NodeId> pool, std::size_t count,
                                             Rng& rng) {
    count = std::min(count, pool.size());
    for (std::size_t k = 0; k < count; ++k) {
        std::uniform_int_distribution<std::size_t> pick(k, pool.size() - 1);
        std::swap(pool[k], pool[pick(rng)]);
    }
    pool.resize(count);
    return pool;
}

std::vector<NodeId> strangers_of(const SocialGraph& graph, NodeId agent) {
    auto adj = graph.adjacent(agent);
    std::vector<NodeId> out;
    for (NodeId j = 0; j < graph.node_count(); ++j) {
        if (j != agent && !std::binary_search(adj.begin(), adj.end(), j)) out.push_back(j);
    }
    return out;
}

int kind_rank(ActionKind k) { return k == ActionKind::Exploit ? 0 : 1; }

// True if (score_a, a) should win over (score_b, b).
bool beats(double score_a, const SocialAction& a, double score_b, const SocialAction& b) {
    if (score_a != score_b) return score_a > score_b;
    if (a.kind != b.kind) return kind_rank(a.kind) < kind_rank(b.kind);
    return a.target < b.target;
}

template <typename Score>
SocialAction argmax(const ActionSet& actions, Score score) {
    const SocialAction* best = nullptr;
    double best_score = 0.0;
    auto visit = [&](const SocialAction& a) {
        const double s = score(a);
        if (!best || beats(s, a, best_score, *best)) {
            best = &a;
            best_score = s;
        }
    };
    for (const auto& a : actions.exploit) visit(a);
    for (const auto& a : actions.explore) visit(a);
    return *best;
}

}  // namespace

ActionSet enumerate_actions(const SocialGraph& graph, NodeId agent, std::size_t candidate_cap,
                            Rng& rng) {
    if (candidate_cap < 1) throw std::invalid_argument("candidate cap L must be >= 1");
    ActionSet set;
    auto adj = graph.adjacent(agent);
    set.exploit.reserve(adj.size());
    for (NodeId j : adj) set.exploit.push_back(SocialAction::exploit(j));

    // 0 = stranger, 1 = self or neighbor, 2 = friend-of-friend
    thread_local std::vector<char> mark;
    mark.assign(static_cast<std::size_t>(graph.node_count()), 0);
    mark[agent] = 1;
    for (NodeId j : adj) mark[j] = 1;

    std::vector<NodeId> fof;
    for (NodeId j : adj) {
        for (NodeId k : graph.adjacent(j)) {
            if (mark[k] == 0) {
                mark[k] = 2;
                fof.push_back(k);
            }
        }
    }
    std::sort(fof.begin(), fof.end());
    if (fof.size() > candidate_cap) fof.resize(candidate_cap);

    set.explore.reserve(candidate_cap);
    for (NodeId k : fof) set.explore.push_back(SocialAction::explore(k));
    if (fof.size() < candidate_cap) {
        std::vector<NodeId> pool;
        for (NodeId k = 0; k < graph.node_count(); ++k) {
            if (mark[k] == 0) pool.push_back(k);
        }
        for (NodeId k : draw_without_replacement(std::move(pool), candidate_cap - fof.size(), rng)) {
            set.explore.push_back(SocialAction::explore(k));
        }
    }
    return set;
}

std::vector<NodeId> draw_frozen_arms(const SocialGraph& graph, NodeId agent,
                                     std::size_t candidate_cap, Rng& rng) {
    auto adj = graph.adjacent(agent);
    std::vector<NodeId> arms(adj.begin(), adj.end());
    auto extra = draw_without_replacement(strangers_of(graph, agent), candidate_cap, rng);
    arms.insert(arms.end(), extra.begin(), extra.end());
    std::sort(arms.begin(), arms.end());
    return arms;
}

std::optional<SocialAction> select_social_ucb(const AgentLearner& learner, AgentState state,
                                              const ActionSet& actions, Step t, double epsilon,
                                              Rng& rng) {
    if (actions.empty()) return std::nullopt;
    const double u = uniform01(rng);
    const double c = learner.params().ucb_c;
    auto ucb = [&](const SocialAction& a) {
        return ucb_score(learner.q(state, a), learner.visits(a.target), t, c);
    };
    if (u < epsilon) return argmax(actions, ucb);
    const SocialAction greedy =
        argmax(actions, [&](const SocialAction& a) { return learner.q(state, a); });
    if (greedy.kind == ActionKind::Exploit) return greedy;
    // Every explore candidate shares the class Q value, so the target inside
    // the class is picked by UCB score.
    return argmax(ActionSet{{}, actions.explore}, ucb);
}

std::optional<SocialAction> select_social_ucb(const AgentLearner& learner, AgentState state,
                                              const ActionSet& actions, Step t, Rng& rng) {
    return select_social_ucb(learner, state, actions, t, epsilon_at(learner.params().epsilon0, t),
                             rng);
}

std::optional<SocialAction> select_random_walk(const ActionSet& actions, Rng& rng) {
    if (actions.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, actions.size() - 1);
    const std::size_t k = pick(rng);
    return k < actions.exploit.size() ? actions.exploit[k]
                                      : actions.explore[k - actions.exploit.size()];
}

std::optional<SocialAction> select_exploit_only(const AgentLearner& learner,
                                                const ActionSet& actions, Step warmup, Step t,
                                                Rng& rng) {
    if (actions.exploit.empty()) return std::nullopt;
    if (t <= warmup) {
        std::uniform_int_distribution<std::size_t> pick(0, actions.exploit.size() - 1);
        return actions.exploit[pick(rng)];
    }
    const SocialAction* best = nullptr;
    double best_mean = 0.0;
    for (const auto& a : actions.exploit) {
        const double m = learner.mu_hat(a.target).value_or(0.0);
        if (!best || m > best_mean || (m == best_mean && a.target < best->target)) {
            best = &a;
            best_mean = m;
        }
    }
    return *best;
}

std::optional<SocialAction> select_mab_only(const AgentLearner& learner, const SocialGraph& graph,
                                            NodeId agent, std::span<const NodeId> frozen_arms,
                                            Step t) {
    if (frozen_arms.empty()) return std::nullopt;
    if (t < 1) throw std::invalid_argument("select_mab_only needs t >= 1");
    auto label = [&](NodeId j) {
        return graph.has_edge(agent, j) ? SocialAction::exploit(j) : SocialAction::explore(j);
    };

    NodeId untried = -1;
    for (NodeId j : frozen_arms) {
        if (learner.visits(j) == 0 && (untried < 0 || j < untried)) untried = j;
    }
    if (untried >= 0) return label(untried);

    const double c = learner.params().ucb_c;
    const double log_t = std::log(static_cast<double>(t));
    NodeId best = -1;
    double best_score = 0.0;
    for (NodeId j : frozen_arms) {
        const auto n = static_cast<double>(learner.visits(j));
        const double score = *learner.mu_hat(j) + c * std::sqrt(log_t / n);
        if (best < 0 || score > best_score || (score == best_score && j < best)) {
            best = j;
            best_score = score;
        }
    }
    return label(best);
}

}  // namespace socialucb
