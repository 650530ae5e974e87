#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "socialucb/config.hpp"
#include "socialucb/fitness_metrics.hpp"
#include "socialucb/graph.hpp"
#include "socialucb/learner.hpp"
#include "socialucb/reward_env.hpp"

namespace socialucb {

struct TrialRecord {
    int trial = 0;
    Step step = 0;
    NodeId agent = 0;
    ActionKind kind = ActionKind::Idle;
    NodeId target = -1;
    double reward = 0.0;
    double fitness = 0.0;
    double cum_fitness = 0.0;
    double step_regret = 0.0;
    double cum_regret = 0.0;
};

struct NetworkSample {
    Step step;
    NetworkStats stats;
};

struct GraphSnapshot {
    Step step;
    std::vector<WeightedEdge> edges;
};

/// Steps at which network statistics are sampled: 0, every `interval`, and T.
std::vector<Step> stats_steps(Step horizon, Step interval);
/// Steps at which edge-list snapshots are taken: {0, 100, 300, T} within [0, T].
std::vector<Step> snapshot_steps(Step horizon);

/// One trial's population: graph, reward model, per-agent learners and the
/// named random streams, advanced one synchronous step at a time.
class World {
public:
    World(const SimConfig& config, int trial_index);
    /// Fixture constructor with a prescribed graph and reward model.
    World(const SimConfig& config, int trial_index, SocialGraph graph, RewardModel rewards);

    /// Every agent acts once, in a freshly shuffled order, on the live graph;
    /// fragility decay then runs once. Rows come back ordered by agent id.
    std::vector<TrialRecord> run_step(Step t);

    const SimConfig& config() const { return config_; }
    const SocialGraph& graph() const { return graph_; }
    const RewardModel& rewards() const { return rewards_; }
    const std::vector<AgentLearner>& learners() const { return learners_; }
    std::vector<AgentLearner>& learners() { return learners_; }
    const std::vector<NodeId>& frozen_arms(NodeId agent) const { return frozen_arms_.at(agent); }
    double cum_fitness(NodeId agent) const { return cum_fitness_.at(agent); }
    double cum_regret(NodeId agent) const { return cum_regret_.at(agent); }

private:
    void init_agents();
    TrialRecord act(NodeId agent, Step t);
    std::vector<SocialAction> next_actions(NodeId agent) const;

    SimConfig config_;
    int trial_;
    Rng policy_rng_;
    Rng reward_rng_;
    Rng decay_rng_;
    Rng permutation_rng_;
    SocialGraph graph_;
    RewardModel rewards_;
    std::vector<AgentLearner> learners_;
    std::vector<std::vector<NodeId>> frozen_arms_;
    std::vector<double> cum_fitness_;
    std::vector<double> cum_regret_;
    FitnessParams regret_params_;
};

struct TrialOutput {
    int trial = 0;
    // Population mean of cumulative fitness / regret after steps 1..T.
    std::vector<double> mean_cum_fitness;
    std::vector<double> mean_cum_regret;
    std::vector<NetworkSample> network;
    std::vector<GraphSnapshot> snapshots;
    std::vector<double> final_cum_fitness;  // per agent
};

using RecordSink = std::function<void(std::span<const TrialRecord>)>;

/// Runs one trial from seeds derived from (master_seed, trial_index).
/// `sink`, when set, receives each step's rows as they are produced.
TrialOutput run_trial(const SimConfig& config, int trial_index, const RecordSink& sink = {});

/// Mean curve over trials, with a 95% CI when there are at least 2 trials.
struct MetricCurve {
    std::vector<double> mean;
    std::optional<std::vector<double>> ci_half_width;

    double final_mean() const { return mean.empty() ? 0.0 : mean.back(); }
    std::optional<double> final_ci() const;
};

MetricCurve summarize(std::span<const std::vector<double>> per_trial);

struct ExperimentResult {
    SimConfig config;
    std::vector<TrialOutput> trials;  // ordered by trial index
    MetricCurve cum_fitness;          // over steps 1..T
    MetricCurve cum_regret;
    std::vector<Step> network_steps;
    MetricCurve avg_degree;  // over network_steps
    MetricCurve avg_clustering;
    MetricCurve largest_component;
};

/// Called once per finished trial, strictly in trial-index order, with the
/// trial's full record stream.
using TrialConsumer = std::function<void(const TrialOutput&, std::span<const TrialRecord>)>;

/// Runs K trials concurrently (OpenMP) and merges deterministically by trial
/// index. Output is identical to run_experiment_serial.
ExperimentResult run_experiment(const SimConfig& config, const TrialConsumer& consumer = {});
ExperimentResult run_experiment_serial(const SimConfig& config, const TrialConsumer& consumer = {});

}  // namespace socialucb
