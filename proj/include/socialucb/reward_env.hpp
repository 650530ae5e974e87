#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "socialucb/types.hpp"

namespace socialucb {

enum class RewardFamily { Beta, ClippedGaussian };

struct RewardParams {
    RewardFamily family = RewardFamily::Beta;
    double sigma_scale = 1.0;  // volatility: multiplies base dispersion
    double kappa = 10.0;       // Beta concentration at sigma_scale = 1
    double sigma_base = 0.15;  // Gaussian std at sigma_scale = 1
};

/// Distribution of one unordered pair.
struct PairDistribution {
    double mean = 0.0;
    double alpha = 0.0;  // Beta shape a (Beta family only)
    double beta = 0.0;   // Beta shape b (Beta family only)
    double stddev = 0.0; // Gaussian std (Gaussian family only)
};

/// Latent stationary reward distributions for every unordered agent pair,
/// plus the oracle view of their true means.
///
/// Immutable after construction; sampling takes the random stream from the
/// caller so one model can be shared across threads.
class RewardModel {
public:
    /// Draws each pair's true mean uniformly and builds its distribution.
    static RewardModel random(NodeId node_count, const RewardParams& params, Rng& rng);

    /// Builds a model with prescribed means, `mean_of(i, j)` called for i < j.
    static RewardModel from_means(NodeId node_count, const RewardParams& params,
                                  const std::function<double(NodeId, NodeId)>& mean_of);

    NodeId node_count() const { return node_count_; }
    RewardFamily family() const { return params_.family; }
    const RewardParams& params() const { return params_; }
    std::size_t pair_count() const { return pairs_.size(); }

    const PairDistribution& pair(NodeId i, NodeId j) const;
    double true_mean(NodeId i, NodeId j) const { return pair(i, j).mean; }

    /// One draw for the (i,j) interaction, always in [0,1].
    double sample(NodeId i, NodeId j, Rng& rng) const;

    /// Candidate with the highest true mean for agent i (lowest id on ties).
    std::pair<NodeId, double> oracle_best(NodeId i, std::span<const NodeId> candidates) const;

private:
    RewardModel(NodeId node_count, const RewardParams& params);
    std::size_t index(NodeId i, NodeId j) const;
    PairDistribution make_pair(double mean) const;

    NodeId node_count_;
    RewardParams params_;
    std::vector<PairDistribution> pairs_;  // upper triangle, row-major
};

}  // namespace socialucb
