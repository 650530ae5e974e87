#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "socialucb/actions.hpp"
#include "socialucb/graph.hpp"
#include "socialucb/learner.hpp"
#include "socialucb/types.hpp"

namespace socialucb {

enum class PolicyKind { SocialUCB, RandomWalk, ExploitOnly, MABOnly };

inline constexpr PolicyKind kAllPolicies[] = {PolicyKind::SocialUCB, PolicyKind::RandomWalk,
                                              PolicyKind::ExploitOnly, PolicyKind::MABOnly};

std::string_view to_string(PolicyKind p);
std::optional<PolicyKind> parse_policy(std::string_view name);

/// Exploit set = all neighbors of `agent`. Explore set = friends-of-friends
/// in ascending id, padded with uniformly drawn non-neighbors, capped at
/// `candidate_cap`.
ActionSet enumerate_actions(const SocialGraph& graph, NodeId agent, std::size_t candidate_cap,
                            Rng& rng);

/// Arm set for the MAB-Only baseline: current neighbors plus up to
/// `candidate_cap` random non-neighbors, ascending. Fixed for the trial.
std::vector<NodeId> draw_frozen_arms(const SocialGraph& graph, NodeId agent,
                                     std::size_t candidate_cap, Rng& rng);

/// Epsilon-greedy Social-UCB choice. With probability epsilon the action
/// with the highest UCB score wins, otherwise the highest Q. Ties go to
/// Exploit over Explore, then to the lowest target id.
std::optional<SocialAction> select_social_ucb(const AgentLearner& learner, AgentState state,
                                              const ActionSet& actions, Step t, double epsilon,
                                              Rng& rng);
std::optional<SocialAction> select_social_ucb(const AgentLearner& learner, AgentState state,
                                              const ActionSet& actions, Step t, Rng& rng);

std::optional<SocialAction> select_random_walk(const ActionSet& actions, Rng& rng);

/// Uniform over ties during warmup, then greedy on the running mean over
/// ties only (unobserved ties count as 0). Never explores.
std::optional<SocialAction> select_exploit_only(const AgentLearner& learner,
                                                const ActionSet& actions, Step warmup, Step t,
                                                Rng& rng);

/// Textbook UCB1 over a frozen arm set: untried arms first (lowest id), then
/// argmax mu_hat + c * sqrt(ln t / N). The returned kind reflects whether the
/// arm is currently a neighbor.
std::optional<SocialAction> select_mab_only(const AgentLearner& learner, const SocialGraph& graph,
                                            NodeId agent, std::span<const NodeId> frozen_arms,
                                            Step t);

}  // namespace socialucb
