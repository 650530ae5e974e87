#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "socialucb/actions.hpp"
#include "socialucb/graph.hpp"
#include "socialucb/reward_env.hpp"

namespace socialucb {

struct FitnessParams {
    double w_reward = 1.0;
    double w_cost = 1.0;
    double cost_explore = 0.10;
    double cost_exploit = 0.02;
    double cost_idle = 0.0;

    double cost(ActionKind kind) const;
};

/// w_reward * r - w_cost * C(kind) + topology_bonus.
///
/// `topology_bonus` is an additive hook for network-level terms (centrality,
/// community robustness); the simulator always passes 0.
double fitness(double reward, ActionKind kind, const FitnessParams& params,
               double topology_bonus = 0.0);

/// Expected-fitness shortfall of `chosen` against the best action in
/// `actions`, using true means; floored at 0. An idle choice is valued at
/// reward 0 with the idle cost. Empty action sets have no regret.
double step_regret(const RewardModel& model, NodeId agent, const std::optional<SocialAction>& chosen,
                   const ActionSet& actions, const FitnessParams& params);

struct NetworkStats {
    double avg_degree = 0.0;
    double avg_clustering = 0.0;
    std::size_t largest_component = 0;
    std::size_t edge_count = 0;

    friend bool operator==(const NetworkStats&, const NetworkStats&) = default;
};

/// Unweighted local clustering of one node (0 for degree < 2).
double local_clustering(const SocialGraph& graph, NodeId node);

/// Degree, clustering, largest component and edge count. Local clustering is
/// computed with an OpenMP loop over nodes and summed serially, so the
/// result is bit-identical to network_stats_serial for any thread count.
NetworkStats network_stats(const SocialGraph& graph);
NetworkStats network_stats_serial(const SocialGraph& graph);

std::size_t largest_component(const SocialGraph& graph);

class RegretLedger {
public:
    void add(double regret);
    std::span<const double> per_step() const { return per_step_; }
    double cumulative() const { return cumulative_; }

private:
    std::vector<double> per_step_;
    double cumulative_ = 0.0;
};

struct AggregateSeries {
    std::vector<double> mean;
    std::vector<double> ci_half_width;  // 1.96 * sd / sqrt(K), sample sd
};

/// Pointwise mean and normal-approximation 95% CI over K >= 2 equal-length series.
AggregateSeries aggregate_trials(std::span<const std::vector<double>> series);

}  // namespace socialucb
