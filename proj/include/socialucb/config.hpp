#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "socialucb/fitness_metrics.hpp"
#include "socialucb/graph.hpp"
#include "socialucb/learner.hpp"
#include "socialucb/policies.hpp"
#include "socialucb/reward_env.hpp"
#include "socialucb/types.hpp"

namespace socialucb {

/// Everything needed to reproduce an experiment bit-for-bit.
struct SimConfig {
    NodeId n_agents = 50;
    Step horizon = 1000;
    int trials = 10;
    double density = 0.04;
    PolicyKind policy = PolicyKind::SocialUCB;

    LearnerParams learner;
    Step warmup = 10;
    EdgeParams edges;
    RewardParams rewards;
    double p_frag = 0.05;
    double decay_lambda = 0.5;
    // Scaled so that discounted returns stay inside [v_min, v_max].
    FitnessParams fitness{.w_reward = 0.2, .w_cost = 0.2};
    bool fitness_as_reward = true;
    bool regret_on_fitness = true;

    std::uint64_t master_seed = 20240601;
    // Every trial reuses the trial-0 seed (degenerate-variance checks).
    bool identical_trial_seeds = false;
    Step stats_interval = 10;
    std::string out_dir = "out";

    /// Throws ConfigError naming the first offending key and its range.
    void validate() const;
};

/// Names of all recognised keys, in canonical order.
const std::vector<std::string>& config_keys();

/// Applies one `key=value` assignment; throws ConfigError on unknown keys or
/// unparsable values. Range checks happen in SimConfig::validate.
void apply_setting(SimConfig& config, std::string_view key, std::string_view value);

/// Parses `key = value` lines ('#' starts a comment) over the defaults, then
/// applies `overrides` (each "key=value"), then validates.
SimConfig parse_config_text(std::string_view text, const std::vector<std::string>& overrides = {});
SimConfig parse_config(const std::filesystem::path& path,
                       const std::vector<std::string>& overrides = {});

/// Value of one key, formatted so that parsing it back is lossless.
std::string config_value(const SimConfig& config, std::string_view key);

/// Full `key = value` echo of every field; round-trips through parse_config_text.
std::string to_config_text(const SimConfig& config);

bool operator==(const SimConfig& a, const SimConfig& b);

}  // namespace socialucb
