#include "socialucb/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace socialucb {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
    T value{};
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("invalid value '" + std::string(text) + "' for key " + std::string(key));
    }
    return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
    if (text == "true" || text == "1" || text == "on") return true;
    if (text == "false" || text == "0" || text == "off") return false;
    throw ConfigError("invalid value '" + std::string(text) + "' for key " + std::string(key) +
                      ": expected true or false");
}

template <typename T>
std::string format_number(T value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string_view family_name(RewardFamily f) {
    return f == RewardFamily::Beta ? "beta" : "gaussian";
}

struct Field {
    std::string key;
    std::function<std::string(const SimConfig&)> get;
    std::function<void(SimConfig&, std::string_view)> set;
};

template <typename T>
Field number_field(std::string key, T SimConfig::*member) {
    return {key, [member](const SimConfig& c) { return format_number(c.*member); },
            [key, member](SimConfig& c, std::string_view v) { c.*member = parse_number<T>(key, v); }};
}

template <typename Group, typename T>
Field nested_field(std::string key, Group SimConfig::*group, T Group::*member) {
    return {key, [group, member](const SimConfig& c) { return format_number(c.*group.*member); },
            [key, group, member](SimConfig& c, std::string_view v) {
                c.*group.*member = parse_number<T>(key, v);
            }};
}

Field bool_field(std::string key, bool SimConfig::*member) {
    return {key, [member](const SimConfig& c) { return std::string(c.*member ? "true" : "false"); },
            [key, member](SimConfig& c, std::string_view v) { c.*member = parse_bool(key, v); }};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        f.push_back(number_field("n_agents", &SimConfig::n_agents));
        f.push_back(number_field("horizon", &SimConfig::horizon));
        f.push_back(number_field("trials", &SimConfig::trials));
        f.push_back(number_field("density", &SimConfig::density));
        f.push_back({"policy", [](const SimConfig& c) { return std::string(to_string(c.policy)); },
                     [](SimConfig& c, std::string_view v) {
                         auto p = parse_policy(v);
                         if (!p) {
                             throw ConfigError("invalid value '" + std::string(v) +
                                               "' for key policy: expected one of social_ucb, "
                                               "random_walk, exploit_only, mab_only");
                         }
                         c.policy = *p;
                     }});
        f.push_back(nested_field("alpha", &SimConfig::learner, &LearnerParams::alpha));
        f.push_back(nested_field("gamma", &SimConfig::learner, &LearnerParams::gamma));
        f.push_back(nested_field("ucb_c", &SimConfig::learner, &LearnerParams::ucb_c));
        f.push_back(nested_field("epsilon0", &SimConfig::learner, &LearnerParams::epsilon0));
        f.push_back(nested_field("memory_cap", &SimConfig::learner, &LearnerParams::memory_cap));
        f.push_back(nested_field("candidate_cap", &SimConfig::learner, &LearnerParams::candidate_cap));
        f.push_back(nested_field("v_min", &SimConfig::learner, &LearnerParams::v_min));
        f.push_back(nested_field("v_max", &SimConfig::learner, &LearnerParams::v_max));
        f.push_back(number_field("warmup", &SimConfig::warmup));
        f.push_back(nested_field("theta", &SimConfig::edges, &EdgeParams::theta));
        f.push_back(nested_field("eta_plus", &SimConfig::edges, &EdgeParams::eta_plus));
        f.push_back(nested_field("eta_minus", &SimConfig::edges, &EdgeParams::eta_minus));
        f.push_back(nested_field("w_min", &SimConfig::edges, &EdgeParams::w_min));
        f.push_back(nested_field("w_init_new", &SimConfig::edges, &EdgeParams::w_init_new));
        f.push_back({"family",
                     [](const SimConfig& c) { return std::string(family_name(c.rewards.family)); },
                     [](SimConfig& c, std::string_view v) {
                         if (v == "beta") {
                             c.rewards.family = RewardFamily::Beta;
                         } else if (v == "gaussian") {
                             c.rewards.family = RewardFamily::ClippedGaussian;
                         } else {
                             throw ConfigError("invalid value '" + std::string(v) +
                                               "' for key family: expected beta or gaussian");
                         }
                     }});
        f.push_back(nested_field("sigma_scale", &SimConfig::rewards, &RewardParams::sigma_scale));
        f.push_back(nested_field("kappa", &SimConfig::rewards, &RewardParams::kappa));
        f.push_back(nested_field("sigma_base", &SimConfig::rewards, &RewardParams::sigma_base));
        f.push_back(number_field("p_frag", &SimConfig::p_frag));
        f.push_back(number_field("decay_lambda", &SimConfig::decay_lambda));
        f.push_back(nested_field("w_reward", &SimConfig::fitness, &FitnessParams::w_reward));
        f.push_back(nested_field("w_cost", &SimConfig::fitness, &FitnessParams::w_cost));
        f.push_back(nested_field("cost_explore", &SimConfig::fitness, &FitnessParams::cost_explore));
        f.push_back(nested_field("cost_exploit", &SimConfig::fitness, &FitnessParams::cost_exploit));
        f.push_back(nested_field("cost_idle", &SimConfig::fitness, &FitnessParams::cost_idle));
        f.push_back(bool_field("fitness_as_reward", &SimConfig::fitness_as_reward));
        f.push_back(bool_field("regret_on_fitness", &SimConfig::regret_on_fitness));
        f.push_back(number_field("master_seed", &SimConfig::master_seed));
        f.push_back(bool_field("identical_trial_seeds", &SimConfig::identical_trial_seeds));
        f.push_back(number_field("stats_interval", &SimConfig::stats_interval));
        f.push_back({"out_dir", [](const SimConfig& c) { return c.out_dir; },
                     [](SimConfig& c, std::string_view v) { c.out_dir = std::string(v); }});
        return f;
    }();
    return table;
}

const Field& field(std::string_view key) {
    for (const auto& f : fields()) {
        if (f.key == key) return f;
    }
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

void require(bool ok, std::string_view key, std::string_view range, const std::string& value) {
    if (!ok) {
        throw ConfigError("out-of-range value " + std::string(key) + "=" + value + ": expected " +
                          std::string(key) + " in " + std::string(range));
    }
}

bool finite(double x) { return std::isfinite(x); }

void apply_assignment(SimConfig& config, std::string_view line) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("malformed setting '" + std::string(line) + "': expected key=value");
    }
    apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& f : fields()) k.push_back(f.key);
        return k;
    }();
    return keys;
}

void apply_setting(SimConfig& config, std::string_view key, std::string_view value) {
    field(key).set(config, value);
}

std::string config_value(const SimConfig& config, std::string_view key) {
    return field(key).get(config);
}

void SimConfig::validate() const {
    auto v = [this](std::string_view key) { return config_value(*this, key); };
    const auto& L = learner;
    require(n_agents >= 2, "n_agents", "[2, inf)", v("n_agents"));
    require(horizon >= 1, "horizon", "[1, inf)", v("horizon"));
    require(trials >= 1, "trials", "[1, inf)", v("trials"));
    require(density >= 0.0 && density <= 1.0, "density", "[0,1]", v("density"));
    require(L.alpha > 0.0 && L.alpha < 1.0, "alpha", "(0,1)", v("alpha"));
    require(L.gamma > 0.0 && L.gamma < 1.0, "gamma", "(0,1)", v("gamma"));
    require(L.ucb_c > 0.0 && finite(L.ucb_c), "ucb_c", "(0, inf)", v("ucb_c"));
    require(L.epsilon0 > 0.0 && L.epsilon0 <= 1.0, "epsilon0", "(0,1]", v("epsilon0"));
    require(L.memory_cap >= 1, "memory_cap", "[1, inf)", v("memory_cap"));
    require(L.candidate_cap >= 1, "candidate_cap", "[1, inf)", v("candidate_cap"));
    require(finite(L.v_min) && L.v_min <= 0.0, "v_min", "(-inf, 0]", v("v_min"));
    require(finite(L.v_max) && L.v_max > L.v_min && L.v_max >= 0.0, "v_max", "[max(0, v_min), inf)",
            v("v_max"));
    require(warmup >= 0, "warmup", "[0, inf)", v("warmup"));
    require(edges.theta >= 0.0 && edges.theta <= 1.0, "theta", "[0,1]", v("theta"));
    require(edges.eta_plus >= 0.0 && edges.eta_plus <= 1.0, "eta_plus", "[0,1]", v("eta_plus"));
    require(edges.eta_minus >= 0.0 && edges.eta_minus <= 1.0, "eta_minus", "[0,1]", v("eta_minus"));
    require(edges.w_min > 0.0 && edges.w_min < 1.0, "w_min", "(0,1)", v("w_min"));
    require(edges.w_init_new >= edges.w_min && edges.w_init_new <= 1.0, "w_init_new", "[w_min, 1]",
            v("w_init_new"));
    require(rewards.sigma_scale >= 0.0 && finite(rewards.sigma_scale), "sigma_scale", "[0, inf)",
            v("sigma_scale"));
    if (rewards.family == RewardFamily::Beta) {
        require(rewards.sigma_scale > 0.0, "sigma_scale", "(0, inf) for the beta family",
                v("sigma_scale"));
    }
    require(rewards.kappa > 0.0 && finite(rewards.kappa), "kappa", "(0, inf)", v("kappa"));
    require(rewards.sigma_base >= 0.0 && finite(rewards.sigma_base), "sigma_base", "[0, inf)",
            v("sigma_base"));
    require(p_frag >= 0.0 && p_frag <= 1.0, "p_frag", "[0,1]", v("p_frag"));
    require(decay_lambda > 0.0 && decay_lambda < 1.0, "decay_lambda", "(0,1)", v("decay_lambda"));
    require(fitness.w_reward > 0.0 && finite(fitness.w_reward), "w_reward", "(0, inf)", v("w_reward"));
    require(fitness.w_cost >= 0.0 && finite(fitness.w_cost), "w_cost", "[0, inf)", v("w_cost"));
    require(fitness.cost_explore >= 0.0 && finite(fitness.cost_explore), "cost_explore", "[0, inf)",
            v("cost_explore"));
    require(fitness.cost_exploit >= 0.0 && finite(fitness.cost_exploit), "cost_exploit", "[0, inf)",
            v("cost_exploit"));
    require(fitness.cost_idle >= 0.0 && finite(fitness.cost_idle), "cost_idle", "[0, inf)",
            v("cost_idle"));
    require(stats_interval >= 1, "stats_interval", "[1, inf)", v("stats_interval"));
}

SimConfig parse_config_text(std::string_view text, const std::vector<std::string>& overrides) {
    SimConfig config;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        try {
            apply_assignment(config, line);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    for (const auto& o : overrides) apply_assignment(config, o);
    config.validate();
    return config;
}

SimConfig parse_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config_text(buf.str(), overrides);
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::string to_config_text(const SimConfig& config) {
    std::string out;
    for (const auto& f : fields()) out += f.key + " = " + f.get(config) + "\n";
    return out;
}

bool operator==(const SimConfig& a, const SimConfig& b) {
    return std::all_of(fields().begin(), fields().end(),
                       [&](const Field& f) { return f.get(a) == f.get(b); });
}

}  // namespace socialucb
