#include "erucb/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace erucb {

namespace {

// Lane reserved for strategy-side randomness; arms use lanes 0..K-1.
constexpr std::uint64_t kStrategyLane = std::numeric_limits<std::uint64_t>::max();

enum class StrategyKind {
  er_ucb,
  er_ucb_generic,
  c_ucb,
  epsilon_greedy,
  softmax_pick,
  random_pick,
};

StrategyKind parse_strategy(const std::string& name) {
  if (name == "er-ucb") return StrategyKind::er_ucb;
  if (name == "er-ucb-generic") return StrategyKind::er_ucb_generic;
  if (name == "c-ucb") return StrategyKind::c_ucb;
  if (name == "epsilon-greedy") return StrategyKind::epsilon_greedy;
  if (name == "softmax") return StrategyKind::softmax_pick;
  if (name == "random") return StrategyKind::random_pick;
  throw ConfigError("unknown strategy: " + name);
}

std::size_t argmax_count(std::span<const std::uint64_t> counts) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    if (counts[i] > counts[best]) best = i;
  }
  return best;
}

struct MeanStd {
  double mean = 0.0;
  double std_dev = 0.0;
};

MeanStd mean_and_std(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return out;
  double sq = 0.0;
  for (double v : values) sq += (v - out.mean) * (v - out.mean);
  out.std_dev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  return out;
}

std::vector<GaussianArmSpec> synthetic_specs(const ExperimentConfig& config) {
  if (config.env == "paper7") return paper7_arms();
  if (config.env == "custom") return config.custom_arms;
  return {};
}

}  // namespace

void ExperimentConfig::validate() const {
  if (env != "paper7" && env != "external" && env != "custom") {
    throw ConfigError("unknown environment: " + env);
  }
  if (env == "external" && external_cmd.empty()) {
    throw ConfigError("external environment requires a command");
  }
  if (env == "external" && arms == 0) {
    throw ConfigError("external environment requires at least one arm");
  }
  if (env == "custom" && custom_arms.empty()) {
    throw ConfigError("custom environment requires at least one arm spec");
  }
  if (replications == 0) throw ConfigError("replications must be >= 1");
  if (stride == 0) throw ConfigError("stride must be >= 1");
  if (!(timeout_seconds > 0.0)) throw ConfigError("timeout must be > 0");
  if (format != "csv" && format != "structured") {
    throw ConfigError("unknown output format: " + format);
  }
  if (!std::isfinite(rho)) throw ConfigError("rho must be finite");
  parse_strategy(strategy);
  try {
    er.validate();
    baseline.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::unique_ptr<Environment> make_environment(const ExperimentConfig& config,
                                              RngStream stream) {
  if (config.env == "external") {
    const auto timeout = std::chrono::milliseconds(
        static_cast<std::int64_t>(config.timeout_seconds * 1000.0));
    return make_external_env(config.external_cmd, config.arms, timeout);
  }
  auto specs = synthetic_specs(config);
  if (specs.empty()) throw ConfigError("unknown environment: " + config.env);
  return make_synthetic_env(std::move(specs), stream);
}

std::optional<RegretOracle> oracle_for(const ExperimentConfig& config) {
  const auto specs = synthetic_specs(config);
  if (specs.empty()) return std::nullopt;
  return make_regret_oracle(specs, config.rho, config.er.theta, config.er.beta);
}

RunSummary run_once(const ExperimentConfig& config, RngStream stream,
                    Environment& env, const RegretOracle* oracle) {
  config.validate();
  const std::size_t arm_count = env.arm_count();
  if (config.budget < arm_count) {
    throw ConfigError("budget must cover one initialization pull per arm");
  }
  const StrategyKind kind = parse_strategy(config.strategy);
  auto strategy_rng = make_engine(stream, kStrategyLane);

  RunSummary summary;
  std::vector<double> first_feedbacks;
  first_feedbacks.reserve(arm_count);
  for (std::uint64_t t = 1; t <= arm_count; ++t) {
    const std::size_t arm = static_cast<std::size_t>(t - 1);
    const double x = env.sample(arm, t);
    first_feedbacks.push_back(x);
    summary.trajectory.record(arm, x, config.rho);
  }
  auto states = init_statistics(first_feedbacks, config.er.beta);

  for (std::uint64_t t = arm_count + 1; t <= config.budget; ++t) {
    std::size_t pick = 0;
    switch (kind) {
      case StrategyKind::er_ucb:
        pick = select_erucb(states, t, config.er, ErUcbVariant::practical).index;
        break;
      case StrategyKind::er_ucb_generic:
        pick = select_erucb(states, t, config.er, ErUcbVariant::generic).index;
        break;
      case StrategyKind::c_ucb:
        pick = select_classical_ucb(states, t, config.baseline, config.er.beta);
        break;
      case StrategyKind::epsilon_greedy:
        pick = select_epsilon_greedy(states, strategy_rng, config.baseline,
                                     config.er.beta);
        break;
      case StrategyKind::softmax_pick:
        pick = select_softmax(states, strategy_rng, config.baseline, config.er.beta);
        break;
      case StrategyKind::random_pick:
        pick = select_random(states, strategy_rng);
        break;
    }
    const double x = env.sample(pick, t);
    states[pick] = update_statistics(states[pick], x, config.er.beta);
    summary.trajectory.record(pick, x, config.rho);
  }

  summary.pull_counts.reserve(arm_count);
  summary.exploitation_rates.reserve(arm_count);
  for (const auto& s : states) {
    summary.pull_counts.push_back(s.pull_count);
    summary.exploitation_rates.push_back(static_cast<double>(s.pull_count) /
                                         static_cast<double>(config.budget));
  }
  summary.most_exploited_arm = argmax_count(summary.pull_counts);

  summary.best_feedback = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < summary.trajectory.size(); ++i) {
    if (summary.trajectory.feedbacks[i] > summary.best_feedback) {
      summary.best_feedback = summary.trajectory.feedbacks[i];
      summary.best_trial = i + 1;
      summary.best_arm = summary.trajectory.selections[i];
    }
  }

  if (oracle != nullptr) {
    const auto curve = empirical_regret(summary.trajectory, *oracle);
    summary.final_regret = curve.empty() ? 0.0 : curve.back();
  }
  return summary;
}

RunSummary run_once(const ExperimentConfig& config, RngStream stream) {
  config.validate();
  const auto oracle = oracle_for(config);
  auto env = make_environment(config, stream);
  return run_once(config, stream, *env, oracle ? &*oracle : nullptr);
}

ReplicatedSummary run_replicated(const ExperimentConfig& config) {
  config.validate();
  const auto oracle = oracle_for(config);

  ReplicatedSummary agg;
  agg.single_run = config.replications == 1;
  for (std::uint32_t rep = 0; rep < config.replications; ++rep) {
    const RngStream stream{config.seed, rep};
    auto env = make_environment(config, stream);
    agg.runs.push_back(run_once(config, stream, *env, oracle ? &*oracle : nullptr));
  }

  agg.arm_count = agg.runs.front().exploitation_rates.size();
  std::vector<double> xs;
  std::vector<double> regrets;
  for (const auto& run : agg.runs) {
    xs.push_back(run.best_feedback);
    agg.best_arm_by_rep.push_back(run.best_arm);
    agg.most_exploited_by_rep.push_back(run.most_exploited_arm);
    if (run.final_regret) regrets.push_back(*run.final_regret);
  }
  const auto x_stats = mean_and_std(xs);
  agg.best_feedback_mean = x_stats.mean;
  agg.best_feedback_std = x_stats.std_dev;

  agg.rate_mean.resize(agg.arm_count);
  agg.rate_std.resize(agg.arm_count);
  std::vector<double> column(agg.runs.size());
  for (std::size_t arm = 0; arm < agg.arm_count; ++arm) {
    for (std::size_t r = 0; r < agg.runs.size(); ++r) {
      column[r] = agg.runs[r].exploitation_rates[arm];
    }
    const auto stats = mean_and_std(column);
    agg.rate_mean[arm] = stats.mean;
    agg.rate_std[arm] = stats.std_dev;
  }

  if (!regrets.empty()) {
    const auto stats = mean_and_std(regrets);
    agg.regret_mean = stats.mean;
    agg.regret_std = stats.std_dev;
  }
  return agg;
}

void SweepSpec::validate() const {
  if (parameter != "theta" && parameter != "gamma" && parameter != "beta") {
    throw ConfigError("sweep parameter must be theta, gamma or beta");
  }
  if (!(lo < hi)) throw ConfigError("sweep range must satisfy lo < hi");
  if (points < 2) throw ConfigError("sweep needs at least 2 points");
  if (replications == 0) throw ConfigError("replications must be >= 1");
}

SweepSpec default_sweep(const std::string& parameter) {
  SweepSpec spec;
  spec.parameter = parameter;
  spec.base = ErUcbParams{};  // theta=0.01, gamma=20, beta=0.85, alpha=4
  if (parameter == "theta") {
    spec.lo = 0.0001;
    spec.hi = 0.5;
  } else if (parameter == "gamma") {
    spec.lo = 0.0;
    spec.hi = 50.0;
  } else if (parameter == "beta") {
    spec.lo = 0.0;
    spec.hi = 1.5;
  } else {
    throw ConfigError("sweep parameter must be theta, gamma or beta");
  }
  return spec;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const ExperimentConfig& config) {
  spec.validate();
  ExperimentConfig local = config;
  local.er = spec.base;
  local.replications = spec.replications;

  std::vector<SweepRow> rows;
  for (std::size_t point = 0; point < spec.points; ++point) {
    // Endpoints are pinned so [lo, hi] is sampled inclusively and exactly.
    const double value =
        point == 0 ? spec.lo
        : point == spec.points - 1
            ? spec.hi
            : spec.lo + (spec.hi - spec.lo) * static_cast<double>(point) /
                            static_cast<double>(spec.points - 1);
    if (spec.parameter == "theta") {
      local.er.theta = value;
    } else if (spec.parameter == "gamma") {
      local.er.gamma = value;
    } else {
      local.er.beta = value;
    }
    local.validate();

    // Sweeps only record exploitation rates, so no oracle is attached.
    std::vector<double> rate_sum;
    for (std::uint32_t rep = 0; rep < spec.replications; ++rep) {
      const RngStream stream{local.seed,
                             (static_cast<std::uint64_t>(point) << 32) | rep};
      auto env = make_environment(local, stream);
      const auto run = run_once(local, stream, *env);
      if (rate_sum.empty()) rate_sum.resize(run.exploitation_rates.size(), 0.0);
      for (std::size_t arm = 0; arm < run.exploitation_rates.size(); ++arm) {
        rate_sum[arm] += run.exploitation_rates[arm];
      }
    }
    for (std::size_t arm = 0; arm < rate_sum.size(); ++arm) {
      rows.push_back(SweepRow{
          spec.parameter, value, arm + 1,
          rate_sum[arm] / static_cast<double>(spec.replications)});
    }
  }
  return rows;
}

std::vector<RegretStudyRow> run_regret_study(const ExperimentConfig& config) {
  if (config.budget == 0) return {};
  config.validate();
  const auto oracle = oracle_for(config);
  if (!oracle) {
    throw ConfigError("the regret study requires a synthetic environment");
  }

  std::vector<double> count_sum(config.budget, 0.0);
  for (std::uint32_t rep = 0; rep < config.replications; ++rep) {
    const RngStream stream{config.seed, rep};
    auto env = make_environment(config, stream);
    const auto run = run_once(config, stream, *env, &*oracle);
    for (std::size_t t = 0; t < config.budget; ++t) {
      count_sum[t] += static_cast<double>(run.trajectory.extreme_counts[t]);
    }
  }

  std::vector<RegretStudyRow> rows;
  for (std::uint64_t t = 1; t <= config.budget; ++t) {
    if (t % config.stride != 0 && t != config.budget) continue;
    rows.push_back(RegretStudyRow{
        t,
        count_sum[t - 1] / static_cast<double>(config.replications),
        static_cast<double>(t) * oracle->p_star,
    });
  }
  return rows;
}

}  // namespace erucb
