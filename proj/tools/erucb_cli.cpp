// Command-line front end for the ER-UCB experiment harness.
//
// Subcommands:
//   run     single or replicated experiment on one strategy
//   sweep   exploitation rates across one hyper-parameter range
//   regret  cumulative extreme-event counts vs. the ground-truth line
//   table1  all five strategies on the 7-arm preset, side by side
//
// Exit codes: 0 success, 2 configuration error, 3 environment/protocol failure.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "erucb/experiment.hpp"
#include "erucb/io.hpp"

namespace {

using namespace erucb;

struct SweepOptions {
  std::string parameter;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 0;
};

// Flat key=value file mirroring the ExperimentConfig field names. Flags given
// on the command line win over file values.
void apply_config_file(const std::string& path, const CLI::App* cmd,
                       ExperimentConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);

  const auto trim = [](std::string s) {
    const auto head = s.find_first_not_of(" \t");
    const auto tail = s.find_last_not_of(" \t\r");
    if (head == std::string::npos) return std::string{};
    return s.substr(head, tail - head + 1);
  };
  const auto as_u64 = [&](const std::string& key, const std::string& v) {
    try {
      return static_cast<std::uint64_t>(std::stoull(v));
    } catch (const std::exception&) {
      throw ConfigError("config key " + key + " needs an unsigned integer, got " + v);
    }
  };
  const auto as_real = [&](const std::string& key, const std::string& v) {
    try {
      return std::stod(v);
    } catch (const std::exception&) {
      throw ConfigError("config key " + key + " needs a real number, got " + v);
    }
  };

  std::string line;
  while (std::getline(in, line)) {
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line is not key=value: " + line);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    static const std::map<std::string, std::string> flag_for = {
        {"env", "--env"},           {"external_cmd", "--external-cmd"},
        {"arms", "--arms"},         {"timeout_seconds", "--timeout"},
        {"strategy", "--strategy"}, {"theta", "--theta"},
        {"gamma", "--gamma"},       {"beta", "--beta"},
        {"alpha", "--alpha"},       {"epsilon", "--epsilon"},
        {"tau", "--tau"},           {"ucb_scale", "--ucb-scale"},
        {"budget", "--budget"},     {"replications", "--replications"},
        {"seed", "--seed"},         {"rho", "--rho"},
        {"stride", "--stride"},     {"out_path", "--out"},
        {"format", "--format"},
    };
    const auto flag = flag_for.find(key);
    if (flag == flag_for.end()) throw ConfigError("unknown config key: " + key);
    if (cmd->count(flag->second) > 0) continue;

    if (key == "env") cfg.env = value;
    else if (key == "external_cmd") cfg.external_cmd = value;
    else if (key == "arms") cfg.arms = static_cast<std::size_t>(as_u64(key, value));
    else if (key == "timeout_seconds") cfg.timeout_seconds = as_real(key, value);
    else if (key == "strategy") cfg.strategy = value;
    else if (key == "theta") cfg.er.theta = as_real(key, value);
    else if (key == "gamma") cfg.er.gamma = as_real(key, value);
    else if (key == "beta") cfg.er.beta = as_real(key, value);
    else if (key == "alpha") cfg.er.alpha = as_real(key, value);
    else if (key == "epsilon") cfg.baseline.epsilon = as_real(key, value);
    else if (key == "tau") cfg.baseline.tau = as_real(key, value);
    else if (key == "ucb_scale") cfg.baseline.ucb_scale = as_real(key, value);
    else if (key == "budget") cfg.budget = as_u64(key, value);
    else if (key == "replications")
      cfg.replications = static_cast<std::uint32_t>(as_u64(key, value));
    else if (key == "seed") cfg.seed = as_u64(key, value);
    else if (key == "rho") cfg.rho = as_real(key, value);
    else if (key == "stride") cfg.stride = as_u64(key, value);
    else if (key == "out_path") cfg.out_path = value;
    else if (key == "format") cfg.format = value;
  }
}

void add_common_options(CLI::App* cmd, ExperimentConfig& cfg, std::string& config_path) {
  cmd->add_option("--config", config_path, "Flat key=value configuration file");
  cmd->add_option("--env", cfg.env, "Environment: paper7 or external")
      ->check(CLI::IsMember({"paper7", "external"}));
  cmd->add_option("--external-cmd", cfg.external_cmd,
                  "Shell command launching the evaluator child process");
  cmd->add_option("--arms", cfg.arms, "Arm count for external environments");
  cmd->add_option("--timeout", cfg.timeout_seconds,
                  "Per-response timeout for external arms, seconds");
  cmd->add_option("--strategy", cfg.strategy, "Arm-selection strategy")
      ->check(CLI::IsMember({"er-ucb", "er-ucb-generic", "c-ucb", "epsilon-greedy",
                             "softmax", "random"}));
  cmd->add_option("--theta", cfg.er.theta, "Extreme-region size");
  cmd->add_option("--gamma", cfg.er.gamma, "Exploitation weight");
  cmd->add_option("--beta", cfg.er.beta, "Feedback shift");
  cmd->add_option("--alpha", cfg.er.alpha, "Confidence exponent (> 2)");
  cmd->add_option("--epsilon", cfg.baseline.epsilon, "epsilon-greedy parameter");
  cmd->add_option("--tau", cfg.baseline.tau, "Softmax temperature");
  cmd->add_option("--ucb-scale", cfg.baseline.ucb_scale,
                  "Classical UCB exploration coefficient");
  cmd->add_option("--budget", cfg.budget, "Trial budget n");
  cmd->add_option("--replications", cfg.replications, "Independent replications");
  cmd->add_option("--seed", cfg.seed, "Base seed");
  cmd->add_option("--rho", cfg.rho, "Extreme-event threshold");
  cmd->add_option("--stride", cfg.stride, "Row stride for regret tables");
  cmd->add_option("--out", cfg.out_path, "Output file path");
  cmd->add_option("--format", cfg.format, "Output format: csv or structured")
      ->check(CLI::IsMember({"csv", "structured"}));
}

std::string join_one_based(const std::vector<std::size_t>& arms) {
  std::string out;
  for (std::size_t i = 0; i < arms.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(arms[i] + 1);
  }
  return out;
}

void print_replicated(const ExperimentConfig& cfg, const ReplicatedSummary& summary) {
  std::printf("strategy %s on %s, n=%llu, %zu replication(s)\n", cfg.strategy.c_str(),
              cfg.env.c_str(), static_cast<unsigned long long>(cfg.budget),
              summary.runs.size());
  std::printf("  X*            %.4f +- %.4f\n", summary.best_feedback_mean,
              summary.best_feedback_std);
  std::printf("  i_X*          %s\n", join_one_based(summary.best_arm_by_rep).c_str());
  std::printf("  max_i R^exi   %s\n",
              join_one_based(summary.most_exploited_by_rep).c_str());
  for (std::size_t arm = 0; arm < summary.arm_count; ++arm) {
    std::printf("  R^exi_%zu       %.4f +- %.4f\n", arm + 1, summary.rate_mean[arm],
                summary.rate_std[arm]);
  }
  if (summary.regret_mean) {
    std::printf("  regret R_n    %.4f +- %.4f\n", *summary.regret_mean,
                *summary.regret_std);
  }
}

int cmd_run(const ExperimentConfig& cfg) {
  const auto summary = run_replicated(cfg);
  print_replicated(cfg, summary);
  if (!cfg.out_path.empty()) {
    if (cfg.format == "csv") {
      write_run_csv(cfg.out_path, summary);
    } else {
      write_summary_json(cfg.out_path, cfg, summary);
    }
    std::printf("wrote %s\n", cfg.out_path.c_str());
  }
  return 0;
}

int cmd_sweep(const ExperimentConfig& cfg, const SweepOptions& opts,
              bool replications_given) {
  SweepSpec spec = default_sweep(opts.parameter);
  if (opts.points > 0) spec.points = opts.points;
  if (opts.lo < opts.hi) {
    spec.lo = opts.lo;
    spec.hi = opts.hi;
  }
  if (replications_given) spec.replications = cfg.replications;
  spec.base.alpha = cfg.er.alpha;
  if (opts.parameter != "theta") spec.base.theta = cfg.er.theta;
  if (opts.parameter != "gamma") spec.base.gamma = cfg.er.gamma;
  if (opts.parameter != "beta") spec.base.beta = cfg.er.beta;

  const auto rows = run_sweep(spec, cfg);
  std::printf("sweep over %s in [%g, %g], %zu points, %u replications each\n",
              spec.parameter.c_str(), spec.lo, spec.hi, spec.points,
              spec.replications);
  if (!cfg.out_path.empty()) {
    if (cfg.format == "csv") {
      write_sweep_csv(cfg.out_path, rows);
    } else {
      write_sweep_json(cfg.out_path, rows);
    }
    std::printf("wrote %s\n", cfg.out_path.c_str());
  }
  return 0;
}

int cmd_regret(const ExperimentConfig& cfg) {
  const auto rows = run_regret_study(cfg);
  if (!rows.empty()) {
    const auto& last = rows.back();
    std::printf("strategy %s: mean extreme-event count at n=%llu is %.3f "
                "(ground-truth expectation %.3f)\n",
                cfg.strategy.c_str(), static_cast<unsigned long long>(last.t),
                last.strategy_count_mean, last.truth_expectation);
  }
  if (!cfg.out_path.empty()) {
    if (cfg.format == "csv") {
      write_regret_csv(cfg.out_path, rows);
    } else {
      write_regret_json(cfg.out_path, rows);
    }
    std::printf("wrote %s\n", cfg.out_path.c_str());
  }
  return 0;
}

int cmd_table1(ExperimentConfig cfg) {
  const std::vector<std::string> strategies = {"er-ucb", "c-ucb", "epsilon-greedy",
                                               "softmax", "random"};
  std::string csv = "strategy,x_star_mean,x_star_std,i_x_star,max_rexi,"
                    "rexi1_mean,rexi1_std\n";
  std::printf("%-16s %-18s %-22s %-22s %s\n", "strategy", "X*", "i_X*", "max_i R^exi",
              "R^exi_1");
  for (const auto& name : strategies) {
    cfg.strategy = name;
    const auto summary = run_replicated(cfg);
    const auto i_xstar = join_one_based(summary.best_arm_by_rep);
    const auto most = join_one_based(summary.most_exploited_by_rep);
    std::printf("%-16s %.4f +- %.4f   %-22s %-22s %.4f +- %.4f\n", name.c_str(),
                summary.best_feedback_mean, summary.best_feedback_std, i_xstar.c_str(),
                most.c_str(), summary.rate_mean[0], summary.rate_std[0]);
    csv += name + ',' + format_double(summary.best_feedback_mean) + ',' +
           format_double(summary.best_feedback_std) + ',';
    std::string semi_i = i_xstar, semi_m = most;
    for (char& c : semi_i) if (c == ',') c = ';';
    for (char& c : semi_m) if (c == ',') c = ';';
    csv += semi_i + ',' + semi_m + ',' + format_double(summary.rate_mean[0]) + ',' +
           format_double(summary.rate_std[0]) + '\n';
  }
  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw IoError("cannot open " + cfg.out_path + " for writing");
    out << csv;
    out.flush();
    if (!out) throw IoError("failed while writing " + cfg.out_path);
    std::printf("wrote %s\n", cfg.out_path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  ExperimentConfig cfg;
  SweepOptions sweep_opts;
  std::string config_path;

  CLI::App app{"Extreme-region UCB bandit experiments"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run one strategy with replications");
  add_common_options(run_cmd, cfg, config_path);

  auto* sweep_cmd = app.add_subcommand("sweep", "Hyper-parameter sweep");
  add_common_options(sweep_cmd, cfg, config_path);
  sweep_cmd->add_option("--param", sweep_opts.parameter, "Swept parameter")
      ->check(CLI::IsMember({"theta", "gamma", "beta"}))
      ->required();
  sweep_cmd->add_option("--lo", sweep_opts.lo, "Range low end");
  sweep_cmd->add_option("--hi", sweep_opts.hi, "Range high end");
  sweep_cmd->add_option("--points", sweep_opts.points, "Number of sample points");

  auto* regret_cmd = app.add_subcommand("regret", "Extreme-event count study");
  add_common_options(regret_cmd, cfg, config_path);

  auto* table1_cmd = app.add_subcommand("table1", "Five-strategy comparison on paper7");
  add_common_options(table1_cmd, cfg, config_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    CLI::App* active = run_cmd->parsed()      ? run_cmd
                       : sweep_cmd->parsed()  ? sweep_cmd
                       : regret_cmd->parsed() ? regret_cmd
                                              : table1_cmd;
    if (!config_path.empty()) apply_config_file(config_path, active, cfg);
    if (run_cmd->parsed()) return cmd_run(cfg);
    if (sweep_cmd->parsed()) {
      return cmd_sweep(cfg, sweep_opts, sweep_cmd->count("--replications") > 0);
    }
    if (regret_cmd->parsed()) return cmd_regret(cfg);
    if (table1_cmd->parsed()) return cmd_table1(std::move(cfg));
  } catch (const EnvironmentError& e) {
    std::cerr << "environment error: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
