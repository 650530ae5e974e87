#include "socialucb/reward_env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace socialucb {

RewardModel::RewardModel(NodeId node_count, const RewardParams& params)
    : node_count_(node_count), params_(params) {
    if (node_count < 2) {
        throw std::invalid_argument("invalid population: need at least 2 agents, got " +
                                    std::to_string(node_count));
    }
    if (!(params.sigma_scale >= 0.0) || !std::isfinite(params.sigma_scale)) {
        throw ConfigError("sigma_scale must be a finite value >= 0");
    }
    const auto n = static_cast<std::size_t>(node_count);
    pairs_.reserve(n * (n - 1) / 2);
}

PairDistribution RewardModel::make_pair(double mean) const {
    if (!(mean >= 0.0 && mean <= 1.0)) {
        throw std::invalid_argument("true mean must lie in [0,1]");
    }
    PairDistribution d;
    d.mean = mean;
    if (params_.family == RewardFamily::Beta) {
        // Higher volatility means lower concentration around the mean.
        const double concentration = params_.kappa / params_.sigma_scale;
        d.alpha = mean * concentration;
        d.beta = (1.0 - mean) * concentration;
        if (!(d.alpha > 0.0 && d.beta > 0.0 && std::isfinite(d.alpha) && std::isfinite(d.beta))) {
            throw ConfigError("invalid Beta parameters (a=" + std::to_string(d.alpha) +
                              ", b=" + std::to_string(d.beta) +
                              "): need kappa > 0, sigma_scale > 0 and means in (0,1)");
        }
    } else {
        d.stddev = params_.sigma_base * params_.sigma_scale;
    }
    return d;
}

RewardModel RewardModel::random(NodeId node_count, const RewardParams& params, Rng& rng) {
    RewardModel m(node_count, params);
    for (NodeId i = 0; i < node_count; ++i) {
        for (NodeId j = i + 1; j < node_count; ++j) {
            double mu = uniform01(rng);
            while (mu == 0.0) mu = uniform01(rng);
            m.pairs_.push_back(m.make_pair(mu));
        }
    }
    return m;
}

RewardModel RewardModel::from_means(NodeId node_count, const RewardParams& params,
                                    const std::function<double(NodeId, NodeId)>& mean_of) {
    RewardModel m(node_count, params);
    for (NodeId i = 0; i < node_count; ++i) {
        for (NodeId j = i + 1; j < node_count; ++j) m.pairs_.push_back(m.make_pair(mean_of(i, j)));
    }
    return m;
}

std::size_t RewardModel::index(NodeId i, NodeId j) const {
    if (i < 0 || j < 0 || i >= node_count_ || j >= node_count_) {
        throw std::out_of_range("agent id outside population");
    }
    if (i == j) throw std::invalid_argument("self-interaction for agent " + std::to_string(i));
    if (i > j) std::swap(i, j);
    const auto n = static_cast<std::size_t>(node_count_);
    const auto a = static_cast<std::size_t>(i);
    const auto b = static_cast<std::size_t>(j);
    // Row a starts after rows 0..a-1, which hold (n-1) + ... + (n-a) entries.
    return a * (2 * n - a - 1) / 2 + (b - a - 1);
}

const PairDistribution& RewardModel::pair(NodeId i, NodeId j) const {
    return pairs_[index(i, j)];
}

double RewardModel::sample(NodeId i, NodeId j, Rng& rng) const {
    const PairDistribution& d = pair(i, j);
    if (params_.family == RewardFamily::Beta) {
        std::gamma_distribution<double> ga(d.alpha, 1.0);
        std::gamma_distribution<double> gb(d.beta, 1.0);
        const double x = ga(rng);
        const double y = gb(rng);
        // Both gammas can underflow for tiny shapes.
        if (x + y <= 0.0) return d.mean;
        return std::clamp(x / (x + y), 0.0, 1.0);
    }
    if (d.stddev == 0.0) return d.mean;
    std::normal_distribution<double> noise(0.0, d.stddev);
    return std::clamp(d.mean + noise(rng), 0.0, 1.0);
}

std::pair<NodeId, double> RewardModel::oracle_best(NodeId i,
                                                   std::span<const NodeId> candidates) const {
    if (candidates.empty()) throw NoActionError("oracle_best: empty candidate list");
    NodeId best = -1;
    double best_mean = 0.0;
    for (NodeId j : candidates) {
        const double mu = true_mean(i, j);
        if (best < 0 || mu > best_mean || (mu == best_mean && j < best)) {
            best = j;
            best_mean = mu;
        }
    }
    return {best, best_mean};
}

}  // namespace socialucb
