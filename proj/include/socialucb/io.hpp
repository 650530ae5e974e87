#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "socialucb/engine.hpp"

namespace socialucb::io {

inline constexpr const char* kRecordsHeader =
    "trial,step,agent,kind,target,reward,fitness,cum_fitness,step_regret,cum_regret";
inline constexpr const char* kNetworkHeader =
    "trial,step,avg_degree,avg_clustering,largest_component,edge_count";
inline constexpr const char* kSummaryHeader =
    "policy,mean_final_cum_fitness,ci95,mean_final_cum_regret";
inline constexpr const char* kCurveHeader =
    "step,mean_cum_fitness,ci95_cum_fitness,mean_cum_regret,ci95_cum_regret";
inline constexpr const char* kLearnerHeader = "agent,target,mu_hat,visits,q_state,q_value";
inline constexpr const char* kTrueMeansHeader = "i,j,mu";

/// Fixed 6-decimal rendering, rounding exact ties away from zero.
std::string fixed6(double value);

void write_records_header(std::ostream& out);
void write_records(std::ostream& out, std::span<const TrialRecord> rows);

void write_network_header(std::ostream& out);
void write_network_series(std::ostream& out, int trial, std::span<const NetworkSample> samples);

/// `i,j,weight` per tie, i < j, lexicographic; no header.
void write_edge_list(std::ostream& out, std::span<const WeightedEdge> edges);

void write_true_means(std::ostream& out, const RewardModel& model);

/// One row per (target, Q entry) of every agent; targets with beliefs but no
/// Q entry get empty q columns. The Explore class appears as target -1.
void write_learner_dump(std::ostream& out, std::span<const AgentLearner> learners);

struct SummaryRow {
    std::string policy;
    double mean_final_cum_fitness;
    std::optional<double> ci95;
    double mean_final_cum_regret;
};

SummaryRow summary_row(const ExperimentResult& result);
void write_summary(std::ostream& out, std::span<const SummaryRow> rows);
void write_curve(std::ostream& out, const ExperimentResult& result);

struct OutputFile {
    std::string path;
    std::size_t rows;
};

/// Runs `config` and writes records.csv, network.csv, curve.csv and the
/// graph_t*.edges snapshots of trial 0 into `dir`. Returns the result and
/// appends every written file to `inventory`.
ExperimentResult run_to_directory(const SimConfig& config, const std::filesystem::path& dir,
                                  std::vector<OutputFile>& inventory);

/// manifest.json: resolved config echo, version, seed, timestamps, outputs.
void write_manifest(const std::filesystem::path& path, const SimConfig& config,
                    const std::string& started_at, const std::string& finished_at,
                    std::span<const OutputFile> outputs);

std::string utc_timestamp();

}  // namespace socialucb::io
