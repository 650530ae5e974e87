#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "socialucb/actions.hpp"
#include "socialucb/graph.hpp"
#include "socialucb/types.hpp"

namespace socialucb {

/// Discretized local network configuration of an agent:
/// degree bucket over {0, 1, 2-3, 4-7, 8+} and quartile of mean tie weight.
struct AgentState {
    static constexpr int kDegreeBuckets = 5;
    static constexpr int kStrengthBuckets = 4;
    static constexpr int kCount = kDegreeBuckets * kStrengthBuckets;

    int degree_bucket = 0;
    int strength_bucket = 0;

    int index() const { return degree_bucket * kStrengthBuckets + strength_bucket; }
    bool valid() const {
        return degree_bucket >= 0 && degree_bucket < kDegreeBuckets && strength_bucket >= 0 &&
               strength_bucket < kStrengthBuckets;
    }

    friend bool operator==(const AgentState&, const AgentState&) = default;
};

int degree_bucket(std::size_t degree);
int strength_bucket(double mean_tie_weight);
AgentState observe_state(const SocialGraph& graph, NodeId agent);

struct EpsilonSchedule {
    double epsilon0 = 0.5;

    /// epsilon0 / sqrt(t); t must be >= 1.
    double at(Step t) const;
};

double epsilon_at(double epsilon0, Step t);

/// Q + c * sqrt(ln t / (n + 1)).
double ucb_score(double q, std::int64_t visits, Step t, double c);

struct LearnerParams {
    double alpha = 0.1;
    double gamma = 0.9;
    double ucb_c = 1.0;
    double epsilon0 = 0.5;
    std::size_t memory_cap = 10;     // M: tracked neighbor ties
    std::size_t candidate_cap = 10;  // L: tracked non-neighbor targets
    double v_min = -1.0;
    double v_max = 2.0;
};

struct ArmStats {
    double mu_hat = 0.0;
    std::int64_t visits = 0;
    Step last_step = 0;
};

struct QEntry {
    int state;
    NodeId target;  // -1 for the Explore class
    double value;
};

/// Per-agent beliefs: running mean rewards and visit counts per target, and
/// a tabular Q function over (AgentState, action key).
///
/// Exploit actions are keyed by target; all Explore actions of a state share
/// one Explore-class entry.
class AgentLearner {
public:
    static constexpr NodeId kExploreClass = -1;

    AgentLearner() = default;
    explicit AgentLearner(LearnerParams params) : params_(params) {}

    const LearnerParams& params() const { return params_; }

    double q(AgentState s, SocialAction a) const;
    void set_q(AgentState s, SocialAction a, double value);

    /// One Q-learning step toward r + gamma * max_{a'} Q(s', a'), clipped to
    /// [v_min, v_max]. An empty `available_next` bootstraps from 0.
    double td_update(AgentState s, SocialAction a, double reward, AgentState s_next,
                     std::span<const SocialAction> available_next);

    /// Delta-rule running mean; returns (mu_hat, visits) after the update.
    std::pair<double, std::int64_t> update_mean(NodeId target, double reward, Step step = 0);

    /// Evicts beliefs for the weakest ties beyond the memory cap M, and for
    /// the stalest non-neighbor targets beyond L. Returns evicted targets.
    std::vector<NodeId> enforce_memory(std::span<const Neighbor> neighbors);

    std::int64_t visits(NodeId target) const;
    /// Empirical mean, or nullopt for a never-observed target.
    std::optional<double> mu_hat(NodeId target) const;
    const std::map<NodeId, ArmStats>& arms() const { return arms_; }
    std::size_t tracked_count() const { return arms_.size(); }

    /// Q entries sorted by (state, target).
    std::vector<QEntry> q_entries() const;

private:
    static std::uint64_t key(AgentState s, SocialAction a);
    static std::uint64_t key(int state_index, NodeId target);
    void forget(NodeId target);

    LearnerParams params_;
    std::map<NodeId, ArmStats> arms_;
    std::unordered_map<std::uint64_t, double> q_;
};

}  // namespace socialucb
