#include "socialucb/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "socialucb/version.hpp"

namespace socialucb::io {

std::string fixed6(double value) {
    if (!std::isfinite(value)) return value != value ? "nan" : (value > 0 ? "inf" : "-inf");
    // 40 fractional digits is exact for every double whose 7th decimal could
    // be a tie; the decision below only needs the digit after the 6th.
    char buf[400];
    std::snprintf(buf, sizeof buf, "%.40f", std::fabs(value));
    std::string s(buf);
    const auto dot = s.find('.');
    std::string digits = s.substr(0, dot) + s.substr(dot + 1, 6);
    const bool round_up = s[dot + 7] >= '5';
    if (round_up) {
        int k = static_cast<int>(digits.size()) - 1;
        while (k >= 0 && digits[k] == '9') digits[k--] = '0';
        if (k < 0) {
            digits.insert(digits.begin(), '1');
        } else {
            ++digits[k];
        }
    }
    std::string out = digits.substr(0, digits.size() - 6) + "." + digits.substr(digits.size() - 6);
    const bool zero = out.find_first_not_of("0.") == std::string::npos;
    if (value < 0 && !zero) out.insert(out.begin(), '-');
    return out;
}

void write_records_header(std::ostream& out) { out << kRecordsHeader << '\n'; }

void write_records(std::ostream& out, std::span<const TrialRecord> rows) {
    for (const auto& r : rows) {
        out << r.trial << ',' << r.step << ',' << r.agent << ',' << to_string(r.kind) << ','
            << r.target << ',' << fixed6(r.reward) << ',' << fixed6(r.fitness) << ','
            << fixed6(r.cum_fitness) << ',' << fixed6(r.step_regret) << ','
            << fixed6(r.cum_regret) << '\n';
    }
}

void write_network_header(std::ostream& out) { out << kNetworkHeader << '\n'; }

void write_network_series(std::ostream& out, int trial, std::span<const NetworkSample> samples) {
    for (const auto& s : samples) {
        out << trial << ',' << s.step << ',' << fixed6(s.stats.avg_degree) << ','
            << fixed6(s.stats.avg_clustering) << ',' << s.stats.largest_component << ','
            << s.stats.edge_count << '\n';
    }
}

void write_edge_list(std::ostream& out, std::span<const WeightedEdge> edges) {
    for (const auto& e : edges) out << e.i << ',' << e.j << ',' << fixed6(e.weight) << '\n';
}

void write_true_means(std::ostream& out, const RewardModel& model) {
    out << kTrueMeansHeader << '\n';
    for (NodeId i = 0; i < model.node_count(); ++i) {
        for (NodeId j = i + 1; j < model.node_count(); ++j) {
            out << i << ',' << j << ',' << fixed6(model.true_mean(i, j)) << '\n';
        }
    }
}

void write_learner_dump(std::ostream& out, std::span<const AgentLearner> learners) {
    out << kLearnerHeader << '\n';
    for (std::size_t agent = 0; agent < learners.size(); ++agent) {
        const AgentLearner& l = learners[agent];
        const auto entries = l.q_entries();
        for (const auto& [target, arm] : l.arms()) {
            bool any = false;
            for (const auto& e : entries) {
                if (e.target != target) continue;
                any = true;
                out << agent << ',' << target << ',' << fixed6(arm.mu_hat) << ',' << arm.visits
                    << ',' << e.state << ',' << fixed6(e.value) << '\n';
            }
            if (!any) {
                out << agent << ',' << target << ',' << fixed6(arm.mu_hat) << ',' << arm.visits
                    << ",,\n";
            }
        }
        for (const auto& e : entries) {
            if (e.target != AgentLearner::kExploreClass) continue;
            out << agent << ",-1,,," << e.state << ',' << fixed6(e.value) << '\n';
        }
    }
}

SummaryRow summary_row(const ExperimentResult& result) {
    return {std::string(to_string(result.config.policy)), result.cum_fitness.final_mean(),
            result.cum_fitness.final_ci(), result.cum_regret.final_mean()};
}

void write_summary(std::ostream& out, std::span<const SummaryRow> rows) {
    out << kSummaryHeader << '\n';
    for (const auto& r : rows) {
        out << r.policy << ',' << fixed6(r.mean_final_cum_fitness) << ','
            << (r.ci95 ? fixed6(*r.ci95) : std::string()) << ',' << fixed6(r.mean_final_cum_regret)
            << '\n';
    }
}

void write_curve(std::ostream& out, const ExperimentResult& result) {
    out << kCurveHeader << '\n';
    const auto& f = result.cum_fitness;
    const auto& r = result.cum_regret;
    for (std::size_t k = 0; k < f.mean.size(); ++k) {
        out << (k + 1) << ',' << fixed6(f.mean[k]) << ','
            << (f.ci_half_width ? fixed6((*f.ci_half_width)[k]) : std::string()) << ','
            << fixed6(r.mean[k]) << ','
            << (r.ci_half_width ? fixed6((*r.ci_half_width)[k]) : std::string()) << '\n';
    }
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

void close_checked(std::ofstream& out, const std::filesystem::path& path) {
    out.close();
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

ExperimentResult run_to_directory(const SimConfig& config, const std::filesystem::path& dir,
                                  std::vector<OutputFile>& inventory) {
    config.validate();
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

    const auto records_path = dir / "records.csv";
    const auto network_path = dir / "network.csv";
    auto records = open_for_write(records_path);
    auto network = open_for_write(network_path);
    write_records_header(records);
    write_network_header(network);

    std::size_t record_rows = 0;
    std::size_t network_rows = 0;
    std::vector<GraphSnapshot> snapshots;
    ExperimentResult result = run_experiment(
        config, [&](const TrialOutput& trial, std::span<const TrialRecord> rows) {
            write_records(records, rows);
            write_network_series(network, trial.trial, trial.network);
            record_rows += rows.size();
            network_rows += trial.network.size();
            if (trial.trial == 0) snapshots = trial.snapshots;
        });
    close_checked(records, records_path);
    close_checked(network, network_path);
    inventory.push_back({records_path.string(), record_rows});
    inventory.push_back({network_path.string(), network_rows});

    const auto curve_path = dir / "curve.csv";
    auto curve = open_for_write(curve_path);
    write_curve(curve, result);
    close_checked(curve, curve_path);
    inventory.push_back({curve_path.string(), result.cum_fitness.mean.size()});

    for (const auto& snap : snapshots) {
        const auto path = dir / ("graph_t" + std::to_string(snap.step) + ".edges");
        auto out = open_for_write(path);
        write_edge_list(out, snap.edges);
        close_checked(out, path);
        inventory.push_back({path.string(), snap.edges.size()});
    }
    return result;
}

void write_manifest(const std::filesystem::path& path, const SimConfig& config,
                    const std::string& started_at, const std::string& finished_at,
                    std::span<const OutputFile> outputs) {
    nlohmann::ordered_json j;
    j["tool"] = "socialucb";
    j["version"] = kVersion;
    j["master_seed"] = config.master_seed;
    j["started_at"] = started_at;
    j["finished_at"] = finished_at;
    nlohmann::ordered_json cfg;
    for (const auto& key : config_keys()) cfg[key] = config_value(config, key);
    j["config"] = cfg;
    j["config_text"] = to_config_text(config);
    auto files = nlohmann::ordered_json::array();
    for (const auto& f : outputs) files.push_back({{"path", f.path}, {"rows", f.rows}});
    j["outputs"] = files;

    auto out = open_for_write(path);
    out << j.dump(2) << '\n';
    close_checked(out, path);
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace socialucb::io
