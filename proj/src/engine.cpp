#include "socialucb/engine.hpp"

#include <algorithm>
#include <exception>
#include <numeric>

#include "socialucb/policies.hpp"

namespace socialucb {

std::vector<Step> stats_steps(Step horizon, Step interval) {
    std::vector<Step> out{0};
    for (Step t = interval; t < horizon; t += interval) out.push_back(t);
    if (horizon > 0) out.push_back(horizon);
    return out;
}

std::vector<Step> snapshot_steps(Step horizon) {
    std::vector<Step> out;
    for (Step t : {Step{0}, Step{100}, Step{300}, horizon}) {
        if (t <= horizon && (out.empty() || out.back() != t)) out.push_back(t);
    }
    return out;
}

namespace {

std::uint64_t seed_index(const SimConfig& c, int trial) {
    return c.identical_trial_seeds ? 0 : static_cast<std::uint64_t>(trial);
}

SocialGraph initial_graph(const SimConfig& c, int trial) {
    Rng rng = make_stream(c.master_seed, seed_index(c, trial), "graph");
    return SocialGraph::random_sparse(c.n_agents, c.density, rng, c.edges);
}

}  // namespace

World::World(const SimConfig& config, int trial_index)
    : config_(config),
      trial_(trial_index),
      policy_rng_(make_stream(config.master_seed, seed_index(config, trial_index), "policy")),
      reward_rng_(make_stream(config.master_seed, seed_index(config, trial_index), "rewards")),
      decay_rng_(make_stream(config.master_seed, seed_index(config, trial_index), "decay")),
      permutation_rng_(
          make_stream(config.master_seed, seed_index(config, trial_index), "permutation")),
      graph_(initial_graph(config, trial_index)),
      rewards_(RewardModel::random(config.n_agents, config.rewards, reward_rng_)) {
    init_agents();
}

World::World(const SimConfig& config, int trial_index, SocialGraph graph, RewardModel rewards)
    : config_(config),
      trial_(trial_index),
      policy_rng_(make_stream(config.master_seed, seed_index(config, trial_index), "policy")),
      reward_rng_(make_stream(config.master_seed, seed_index(config, trial_index), "rewards")),
      decay_rng_(make_stream(config.master_seed, seed_index(config, trial_index), "decay")),
      permutation_rng_(
          make_stream(config.master_seed, seed_index(config, trial_index), "permutation")),
      graph_(std::move(graph)),
      rewards_(std::move(rewards)) {
    if (graph_.node_count() != config_.n_agents || rewards_.node_count() != config_.n_agents) {
        throw std::invalid_argument("fixture graph/reward model size differs from n_agents");
    }
    init_agents();
}

void World::init_agents() {
    const auto n = static_cast<std::size_t>(config_.n_agents);
    learners_.assign(n, AgentLearner(config_.learner));
    cum_fitness_.assign(n, 0.0);
    cum_regret_.assign(n, 0.0);
    frozen_arms_.assign(n, {});
    if (config_.policy == PolicyKind::MABOnly) {
        for (NodeId i = 0; i < config_.n_agents; ++i) {
            frozen_arms_[i] = draw_frozen_arms(graph_, i, config_.learner.candidate_cap, policy_rng_);
        }
    }
    regret_params_ = config_.fitness;
    if (!config_.regret_on_fitness) {
        regret_params_.w_reward = 1.0;
        regret_params_.w_cost = 0.0;
    }
}

std::vector<SocialAction> World::next_actions(NodeId agent) const {
    std::vector<SocialAction> out;
    auto adj = graph_.adjacent(agent);
    out.reserve(adj.size() + 1);
    for (NodeId j : adj) out.push_back(SocialAction::exploit(j));
    // Explore actions share one Q entry, so one representative is enough.
    if (adj.size() + 1 < static_cast<std::size_t>(graph_.node_count())) {
        out.push_back(SocialAction::explore(AgentLearner::kExploreClass));
    }
    return out;
}

TrialRecord World::act(NodeId agent, Step t) {
    const AgentState state = observe_state(graph_, agent);
    AgentLearner& learner = learners_[agent];
    const std::size_t cap = config_.learner.candidate_cap;

    ActionSet actions;
    std::optional<SocialAction> choice;
    switch (config_.policy) {
        case PolicyKind::SocialUCB:
            actions = enumerate_actions(graph_, agent, cap, policy_rng_);
            choice = select_social_ucb(learner, state, actions, t, policy_rng_);
            break;
        case PolicyKind::RandomWalk:
            actions = enumerate_actions(graph_, agent, cap, policy_rng_);
            choice = select_random_walk(actions, policy_rng_);
            break;
        case PolicyKind::ExploitOnly:
            actions = enumerate_actions(graph_, agent, cap, policy_rng_);
            choice = select_exploit_only(learner, actions, config_.warmup, t, policy_rng_);
            break;
        case PolicyKind::MABOnly:
            for (NodeId j : frozen_arms_[agent]) {
                if (graph_.has_edge(agent, j)) {
                    actions.exploit.push_back(SocialAction::exploit(j));
                } else {
                    actions.explore.push_back(SocialAction::explore(j));
                }
            }
            choice = select_mab_only(learner, graph_, agent, frozen_arms_[agent], t);
            break;
    }

    TrialRecord row;
    row.trial = trial_;
    row.step = t;
    row.agent = agent;
    row.step_regret = step_regret(rewards_, agent, choice, actions, regret_params_);

    if (!choice) {
        row.kind = ActionKind::Idle;
        row.target = -1;
        row.reward = 0.0;
        row.fitness = fitness(0.0, ActionKind::Idle, config_.fitness);
    } else {
        const SocialAction a = *choice;
        const double r = rewards_.sample(agent, a.target, reward_rng_);
        row.kind = a.kind;
        row.target = a.target;
        row.reward = r;
        row.fitness = fitness(r, a.kind, config_.fitness);
        graph_.reinforce_or_create(agent, a.target, r, t);

        switch (config_.policy) {
            case PolicyKind::SocialUCB: {
                learner.update_mean(a.target, r, t);
                const AgentState next = observe_state(graph_, agent);
                const auto available = next_actions(agent);
                learner.td_update(state, a, config_.fitness_as_reward ? row.fitness : r, next,
                                  available);
                learner.enforce_memory(graph_.neighbors(agent));
                break;
            }
            case PolicyKind::ExploitOnly:
            case PolicyKind::MABOnly:
                learner.update_mean(a.target, r, t);
                break;
            case PolicyKind::RandomWalk:
                break;
        }
    }
    cum_fitness_[agent] += row.fitness;
    cum_regret_[agent] += row.step_regret;
    row.cum_fitness = cum_fitness_[agent];
    row.cum_regret = cum_regret_[agent];
    return row;
}

std::vector<TrialRecord> World::run_step(Step t) {
    if (t < 1) throw std::invalid_argument("run_step needs t >= 1");
    std::vector<NodeId> order(static_cast<std::size_t>(config_.n_agents));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), permutation_rng_);

    std::vector<TrialRecord> rows(order.size());
    for (NodeId agent : order) rows[static_cast<std::size_t>(agent)] = act(agent, t);
    graph_.decay_step(config_.p_frag, config_.decay_lambda, t, decay_rng_);
    return rows;
}

TrialOutput run_trial(const SimConfig& config, int trial_index, const RecordSink& sink) {
    config.validate();
    World world(config, trial_index);
    TrialOutput out;
    out.trial = trial_index;
    const auto horizon = static_cast<std::size_t>(config.horizon);
    out.mean_cum_fitness.reserve(horizon);
    out.mean_cum_regret.reserve(horizon);

    const auto sample_at = stats_steps(config.horizon, config.stats_interval);
    const auto snap_at = snapshot_steps(config.horizon);
    auto observe = [&](Step t) {
        if (std::binary_search(sample_at.begin(), sample_at.end(), t)) {
            out.network.push_back({t, network_stats(world.graph())});
        }
        if (std::binary_search(snap_at.begin(), snap_at.end(), t)) {
            out.snapshots.push_back({t, world.graph().edges()});
        }
    };

    observe(0);
    const auto n = static_cast<double>(config.n_agents);
    for (Step t = 1; t <= config.horizon; ++t) {
        const auto rows = world.run_step(t);
        if (sink) sink(rows);
        double f = 0.0;
        double r = 0.0;
        for (const auto& row : rows) {
            f += row.cum_fitness;
            r += row.cum_regret;
        }
        out.mean_cum_fitness.push_back(f / n);
        out.mean_cum_regret.push_back(r / n);
        observe(t);
    }
    out.final_cum_fitness.resize(static_cast<std::size_t>(config.n_agents));
    for (NodeId i = 0; i < config.n_agents; ++i) out.final_cum_fitness[i] = world.cum_fitness(i);
    return out;
}

std::optional<double> MetricCurve::final_ci() const {
    if (!ci_half_width || ci_half_width->empty()) return std::nullopt;
    return ci_half_width->back();
}

MetricCurve summarize(std::span<const std::vector<double>> per_trial) {
    MetricCurve curve;
    if (per_trial.empty()) return curve;
    if (per_trial.size() == 1) {
        curve.mean = per_trial.front();
        return curve;
    }
    auto agg = aggregate_trials(per_trial);
    curve.mean = std::move(agg.mean);
    curve.ci_half_width = std::move(agg.ci_half_width);
    return curve;
}

namespace {

ExperimentResult aggregate(const SimConfig& config, std::vector<TrialOutput> trials) {
    ExperimentResult res;
    res.config = config;
    res.network_steps = stats_steps(config.horizon, config.stats_interval);

    std::vector<std::vector<double>> fit, reg, deg, clu, lcc;
    for (const auto& t : trials) {
        fit.push_back(t.mean_cum_fitness);
        reg.push_back(t.mean_cum_regret);
        std::vector<double> d, c, l;
        for (const auto& s : t.network) {
            d.push_back(s.stats.avg_degree);
            c.push_back(s.stats.avg_clustering);
            l.push_back(static_cast<double>(s.stats.largest_component));
        }
        deg.push_back(std::move(d));
        clu.push_back(std::move(c));
        lcc.push_back(std::move(l));
    }
    res.cum_fitness = summarize(fit);
    res.cum_regret = summarize(reg);
    res.avg_degree = summarize(deg);
    res.avg_clustering = summarize(clu);
    res.largest_component = summarize(lcc);
    res.trials = std::move(trials);
    return res;
}

TrialOutput run_collecting(const SimConfig& config, int k, std::vector<TrialRecord>* records) {
    RecordSink sink;
    if (records) {
        records->reserve(static_cast<std::size_t>(config.horizon) *
                         static_cast<std::size_t>(config.n_agents));
        sink = [records](std::span<const TrialRecord> rows) {
            records->insert(records->end(), rows.begin(), rows.end());
        };
    }
    return run_trial(config, k, sink);
}

}  // namespace

ExperimentResult run_experiment(const SimConfig& config, const TrialConsumer& consumer) {
    config.validate();
    const int k_trials = config.trials;
    std::vector<TrialOutput> trials(static_cast<std::size_t>(k_trials));
    std::exception_ptr failure;

#pragma omp parallel for ordered schedule(dynamic, 1)
    for (int k = 0; k < k_trials; ++k) {
        std::vector<TrialRecord> records;
        TrialOutput out;
        bool ok = true;
        try {
            out = run_collecting(config, k, consumer ? &records : nullptr);
        } catch (...) {
            ok = false;
#pragma omp critical(socialucb_failure)
            if (!failure) failure = std::current_exception();
        }
#pragma omp ordered
        {
            if (ok) {
                try {
                    if (consumer) consumer(out, records);
                } catch (...) {
#pragma omp critical(socialucb_failure)
                    if (!failure) failure = std::current_exception();
                }
                trials[static_cast<std::size_t>(k)] = std::move(out);
            }
        }
    }
    if (failure) std::rethrow_exception(failure);
    return aggregate(config, std::move(trials));
}

ExperimentResult run_experiment_serial(const SimConfig& config, const TrialConsumer& consumer) {
    config.validate();
    std::vector<TrialOutput> trials;
    for (int k = 0; k < config.trials; ++k) {
        std::vector<TrialRecord> records;
        TrialOutput out = run_collecting(config, k, consumer ? &records : nullptr);
        if (consumer) consumer(out, records);
        trials.push_back(std::move(out));
    }
    return aggregate(config, std::move(trials));
}

}  // namespace socialucb
