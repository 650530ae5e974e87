#include "socialucb/fitness_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace socialucb {

double FitnessParams::cost(ActionKind kind) const {
    switch (kind) {
        case ActionKind::Explore: return cost_explore;
        case ActionKind::Exploit: return cost_exploit;
        case ActionKind::Idle: return cost_idle;
    }
    return 0.0;
}

double fitness(double reward, ActionKind kind, const FitnessParams& params, double topology_bonus) {
    return params.w_reward * reward - params.w_cost * params.cost(kind) + topology_bonus;
}

double step_regret(const RewardModel& model, NodeId agent, const std::optional<SocialAction>& chosen,
                   const ActionSet& actions, const FitnessParams& params) {
    if (actions.empty()) return 0.0;
    auto expected = [&](const SocialAction& a) {
        return fitness(model.true_mean(agent, a.target), a.kind, params);
    };
    double best = expected(actions.exploit.empty() ? actions.explore.front() : actions.exploit.front());
    for (const auto& a : actions.exploit) best = std::max(best, expected(a));
    for (const auto& a : actions.explore) best = std::max(best, expected(a));
    const double got = chosen ? expected(*chosen) : fitness(0.0, ActionKind::Idle, params);
    return std::max(0.0, best - got);
}

double local_clustering(const SocialGraph& graph, NodeId node) {
    auto adj = graph.adjacent(node);
    const std::size_t k = adj.size();
    if (k < 2) return 0.0;
    std::size_t links = 0;
    // Count each neighbor pair (a < b) once by intersecting sorted lists.
    for (std::size_t x = 0; x < k; ++x) {
        auto other = graph.adjacent(adj[x]);
        auto lo = std::upper_bound(other.begin(), other.end(), adj[x]);
        auto mine = adj.begin() + static_cast<std::ptrdiff_t>(x) + 1;
        while (lo != other.end() && mine != adj.end()) {
            if (*lo < *mine) {
                ++lo;
            } else if (*mine < *lo) {
                ++mine;
            } else {
                ++links;
                ++lo;
                ++mine;
            }
        }
    }
    return static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1) / 2.0);
}

std::size_t largest_component(const SocialGraph& graph) {
    const auto n = static_cast<std::size_t>(graph.node_count());
    std::vector<char> seen(n, 0);
    std::vector<NodeId> stack;
    std::size_t best = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        seen[root] = 1;
        stack.assign(1, static_cast<NodeId>(root));
        std::size_t size = 0;
        while (!stack.empty()) {
            const NodeId v = stack.back();
            stack.pop_back();
            ++size;
            for (NodeId w : graph.adjacent(v)) {
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        best = std::max(best, size);
    }
    return best;
}

namespace {

NetworkStats finish(const SocialGraph& graph, const std::vector<double>& local) {
    NetworkStats s;
    const auto n = static_cast<double>(graph.node_count());
    s.edge_count = graph.edge_count();
    s.avg_degree = 2.0 * static_cast<double>(s.edge_count) / n;
    double sum = 0.0;
    for (double c : local) sum += c;
    s.avg_clustering = sum / n;
    s.largest_component = largest_component(graph);
    return s;
}

}  // namespace

NetworkStats network_stats(const SocialGraph& graph) {
    const NodeId n = graph.node_count();
    std::vector<double> local(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 64)
    for (NodeId v = 0; v < n; ++v) local[static_cast<std::size_t>(v)] = local_clustering(graph, v);
    return finish(graph, local);
}

NetworkStats network_stats_serial(const SocialGraph& graph) {
    const NodeId n = graph.node_count();
    std::vector<double> local(static_cast<std::size_t>(n));
    for (NodeId v = 0; v < n; ++v) local[static_cast<std::size_t>(v)] = local_clustering(graph, v);
    return finish(graph, local);
}

void RegretLedger::add(double regret) {
    if (!(regret >= 0.0)) throw std::invalid_argument("per-step regret must be >= 0");
    per_step_.push_back(regret);
    cumulative_ += regret;
}

AggregateSeries aggregate_trials(std::span<const std::vector<double>> series) {
    const std::size_t k = series.size();
    if (k < 2) throw std::invalid_argument("confidence interval undefined for fewer than 2 trials");
    const std::size_t len = series.front().size();
    for (const auto& s : series) {
        if (s.size() != len) throw std::invalid_argument("trial series differ in length");
    }
    AggregateSeries out;
    out.mean.resize(len);
    out.ci_half_width.resize(len);
    const auto kd = static_cast<double>(k);
    for (std::size_t t = 0; t < len; ++t) {
        double sum = 0.0;
        for (const auto& s : series) sum += s[t];
        const double mean = sum / kd;
        double ss = 0.0;
        for (const auto& s : series) ss += (s[t] - mean) * (s[t] - mean);
        const double sd = std::sqrt(ss / (kd - 1.0));
        out.mean[t] = mean;
        out.ci_half_width[t] = 1.96 * sd / std::sqrt(kd);
    }
    return out;
}

}  // namespace socialucb
