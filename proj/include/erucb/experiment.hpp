#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "erucb/environment.hpp"
#include "erucb/regret.hpp"
#include "erucb/rng.hpp"
#include "erucb/strategies.hpp"

namespace erucb {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  // environment: "paper7", "external", or "custom" (custom_arms below)
  std::string env = "paper7";
  std::string external_cmd;
  std::size_t arms = 7;  // external environments only
  double timeout_seconds = 30.0;
  std::vector<GaussianArmSpec> custom_arms;

  // strategy: er-ucb | er-ucb-generic | c-ucb | epsilon-greedy | softmax | random
  std::string strategy = "er-ucb";
  ErUcbParams er;
  BaselineParams baseline;

  std::uint64_t budget = 1000;
  std::uint32_t replications = 10;
  std::uint64_t seed = 1;
  double rho = 1.0;
  std::uint64_t stride = 10;

  std::string out_path;
  std::string format = "csv";  // csv | structured

  void validate() const;  // throws ConfigError
};

std::unique_ptr<Environment> make_environment(const ExperimentConfig& config,
                                              RngStream stream);

/// Oracle for the configured synthetic arms; empty for external environments.
std::optional<RegretOracle> oracle_for(const ExperimentConfig& config);

struct RunSummary {
  double best_feedback = 0.0;             // X*
  std::size_t best_arm = 0;               // arm the best feedback came from
  std::uint64_t best_trial = 0;           // 1-based trial of the best feedback
  std::vector<std::uint64_t> pull_counts;
  std::vector<double> exploitation_rates;  // pull_count / n
  std::size_t most_exploited_arm = 0;
  Trajectory trajectory;
  std::optional<double> final_regret;      // synthetic environments only
};

/// One full pass of the bandit loop: each arm pulled once in index order at
/// t = 1..K, then strategy-driven selection for t = K+1..n.
RunSummary run_once(const ExperimentConfig& config, RngStream stream,
                    Environment& env, const RegretOracle* oracle = nullptr);

/// Convenience overload constructing the environment (and oracle, when
/// synthetic) from the config.
RunSummary run_once(const ExperimentConfig& config, RngStream stream);

struct ReplicatedSummary {
  std::size_t arm_count = 0;
  bool single_run = false;  // std fields are 0 by convention
  double best_feedback_mean = 0.0;
  double best_feedback_std = 0.0;
  std::vector<double> rate_mean;
  std::vector<double> rate_std;
  std::vector<std::size_t> best_arm_by_rep;
  std::vector<std::size_t> most_exploited_by_rep;
  std::optional<double> regret_mean;
  std::optional<double> regret_std;
  std::vector<RunSummary> runs;
};

/// Runs replication r on stream (seed, stream_id = r) and aggregates.
ReplicatedSummary run_replicated(const ExperimentConfig& config);

struct SweepSpec {
  std::string parameter;  // theta | gamma | beta
  double lo = 0.0;
  double hi = 1.0;
  std::size_t points = 100;  // evenly spaced, >= 2
  ErUcbParams base;          // fixed values for the other two parameters
  std::uint32_t replications = 3;

  void validate() const;
};

/// Paper-mirroring sweep ranges: theta in [0.0001, 0.5] (gamma=20, beta=0.85),
/// gamma in [0, 50] (theta=0.01, beta=0.85), beta in [0, 1.5] (theta=0.01,
/// gamma=20); 3 replications each.
SweepSpec default_sweep(const std::string& parameter);

struct SweepRow {
  std::string param;
  double value = 0.0;
  std::size_t arm = 0;  // 1-based in emitted tables
  double mean_rate = 0.0;
};

/// Replication r of sweep point p runs on stream_id = (p << 32) | r.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const ExperimentConfig& config);

struct RegretStudyRow {
  std::uint64_t t = 0;
  double strategy_count_mean = 0.0;  // mean cumulative count of feedbacks >= rho
  double truth_expectation = 0.0;    // t * p*
};

/// Synthetic environments only; rows emitted every `stride` trials plus the
/// final trial.
std::vector<RegretStudyRow> run_regret_study(const ExperimentConfig& config);

}  // namespace erucb
