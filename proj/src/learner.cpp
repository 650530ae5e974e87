#include "socialucb/learner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace socialucb {

int degree_bucket(std::size_t degree) {
    if (degree == 0) return 0;
    if (degree == 1) return 1;
    if (degree <= 3) return 2;
    if (degree <= 7) return 3;
    return 4;
}

int strength_bucket(double w) {
    if (w < 0.25) return 0;
    if (w < 0.5) return 1;
    if (w < 0.75) return 2;
    return 3;
}

AgentState observe_state(const SocialGraph& graph, NodeId agent) {
    const std::size_t deg = graph.degree(agent);
    if (deg == 0) return {0, 0};
    return {degree_bucket(deg), strength_bucket(graph.mean_tie_strength(agent))};
}

double EpsilonSchedule::at(Step t) const { return epsilon_at(epsilon0, t); }

double epsilon_at(double epsilon0, Step t) {
    if (t < 1) throw std::invalid_argument("epsilon schedule needs t >= 1, got " + std::to_string(t));
    return epsilon0 / std::sqrt(static_cast<double>(t));
}

double ucb_score(double q, std::int64_t visits, Step t, double c) {
    if (t < 1) throw std::invalid_argument("ucb_score needs t >= 1");
    if (visits < 0) throw std::invalid_argument("ucb_score needs visits >= 0");
    return q + c * std::sqrt(std::log(static_cast<double>(t)) / static_cast<double>(visits + 1));
}

std::uint64_t AgentLearner::key(int state_index, NodeId target) {
    return (static_cast<std::uint64_t>(state_index) << 32) |
           static_cast<std::uint32_t>(target + 1);
}

std::uint64_t AgentLearner::key(AgentState s, SocialAction a) {
    if (!s.valid()) {
        throw std::invalid_argument("state (" + std::to_string(s.degree_bucket) + "," +
                                    std::to_string(s.strength_bucket) +
                                    ") is not representable in the Q-table");
    }
    switch (a.kind) {
        case ActionKind::Explore: return key(s.index(), kExploreClass);
        case ActionKind::Exploit:
            if (a.target < 0) throw std::invalid_argument("exploit action without a target");
            return key(s.index(), a.target);
        case ActionKind::Idle: break;
    }
    throw std::invalid_argument("idle is not a Q-table action");
}

double AgentLearner::q(AgentState s, SocialAction a) const {
    auto it = q_.find(key(s, a));
    return it == q_.end() ? 0.0 : it->second;
}

void AgentLearner::set_q(AgentState s, SocialAction a, double value) {
    q_[key(s, a)] = std::clamp(value, params_.v_min, params_.v_max);
}

double AgentLearner::td_update(AgentState s, SocialAction a, double reward, AgentState s_next,
                               std::span<const SocialAction> available_next) {
    const std::uint64_t k = key(s, a);
    double best_next = 0.0;
    bool first = true;
    for (const SocialAction& next : available_next) {
        const double v = q(s_next, next);
        if (first || v > best_next) best_next = v;
        first = false;
    }
    double& value = q_[k];
    value += params_.alpha * (reward + params_.gamma * best_next - value);
    value = std::clamp(value, params_.v_min, params_.v_max);
    return value;
}

std::pair<double, std::int64_t> AgentLearner::update_mean(NodeId target, double reward, Step step) {
    ArmStats& arm = arms_[target];
    arm.visits += 1;
    arm.mu_hat += (reward - arm.mu_hat) / static_cast<double>(arm.visits);
    arm.last_step = step;
    return {arm.mu_hat, arm.visits};
}

std::int64_t AgentLearner::visits(NodeId target) const {
    auto it = arms_.find(target);
    return it == arms_.end() ? 0 : it->second.visits;
}

std::optional<double> AgentLearner::mu_hat(NodeId target) const {
    auto it = arms_.find(target);
    if (it == arms_.end() || it->second.visits == 0) return std::nullopt;
    return it->second.mu_hat;
}

void AgentLearner::forget(NodeId target) {
    arms_.erase(target);
    for (int s = 0; s < AgentState::kCount; ++s) q_.erase(key(s, target));
}

std::vector<NodeId> AgentLearner::enforce_memory(std::span<const Neighbor> neighbors) {
    std::vector<Neighbor> tracked;
    std::vector<std::pair<Step, NodeId>> strangers;
    for (const auto& [target, arm] : arms_) {
        auto it = std::find_if(neighbors.begin(), neighbors.end(),
                               [t = target](const Neighbor& n) { return n.node == t; });
        if (it != neighbors.end()) {
            tracked.push_back(*it);
        } else {
            strangers.emplace_back(arm.last_step, target);
        }
    }

    std::vector<NodeId> dropped;
    if (tracked.size() > params_.memory_cap) {
        // Weakest first; among equal weights the higher id goes first.
        std::sort(tracked.begin(), tracked.end(), [](const Neighbor& a, const Neighbor& b) {
            return a.weight != b.weight ? a.weight < b.weight : a.node > b.node;
        });
        const std::size_t excess = tracked.size() - params_.memory_cap;
        for (std::size_t k = 0; k < excess; ++k) dropped.push_back(tracked[k].node);
    }
    if (strangers.size() > params_.candidate_cap) {
        std::sort(strangers.begin(), strangers.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first < b.first : a.second > b.second;
        });
        const std::size_t excess = strangers.size() - params_.candidate_cap;
        for (std::size_t k = 0; k < excess; ++k) dropped.push_back(strangers[k].second);
    }
    for (NodeId target : dropped) forget(target);
    return dropped;
}

std::vector<QEntry> AgentLearner::q_entries() const {
    std::vector<QEntry> out;
    out.reserve(q_.size());
    for (const auto& [k, v] : q_) {
        const int state = static_cast<int>(k >> 32);
        const NodeId target = static_cast<NodeId>(static_cast<std::uint32_t>(k)) - 1;
        out.push_back({state, target, v});
    }
    std::sort(out.begin(), out.end(), [](const QEntry& a, const QEntry& b) {
        return a.state != b.state ? a.state < b.state : a.target < b.target;
    });
    return out;
}

}  // namespace socialucb
