#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "erucb/experiment.hpp"

namespace erucb {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);
double parse_double(const std::string& text);

// Arm and replication columns are 1-based in all emitted files.

/// Columns: replication,arm,pull_count,exploitation_rate,best_feedback,best_arm
void write_run_csv(const std::string& path, const ReplicatedSummary& summary);

/// Columns: param_name,param_value,arm,mean_exploitation_rate
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(const std::string& path);

/// Columns: t,strategy_count_mean,truth_expectation
void write_regret_csv(const std::string& path, const std::vector<RegretStudyRow>& rows);
std::vector<RegretStudyRow> read_regret_csv(const std::string& path);

// Structured (JSON) forms of the same tables; values round-trip exactly.
void write_sweep_json(const std::string& path, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_json(const std::string& path);
void write_regret_json(const std::string& path, const std::vector<RegretStudyRow>& rows);
std::vector<RegretStudyRow> read_regret_json(const std::string& path);

/// Aggregate summary (means, stds, per-replication index lists) as JSON.
void write_summary_json(const std::string& path, const ExperimentConfig& config,
                        const ReplicatedSummary& summary);

}  // namespace erucb
