#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace erucb {

/// Ground-truth feedback distribution of one synthetic arm.
struct GaussianArmSpec {
  double mean = 0.0;
  double std_dev = 1.0;
};

/// Upper-tail probability Pr[X >= rho] for X ~ N(mean, std_dev^2),
/// evaluated through the complementary error function.
double extreme_prob(const GaussianArmSpec& arm, double rho);

/// argmax of mean_i + sqrt(1/theta) * std_dev_i; ties to the lowest index.
std::size_t ground_truth_index(std::span<const GaussianArmSpec> arms, double theta);

/// Extreme-region score at exact moments:
///   (mean - beta) + sqrt((std_dev^2 + (mean - beta)^2) / theta).
double exact_score(const GaussianArmSpec& arm, double theta, double beta);

/// Ground-truth quantities for a synthetic arm set at a fixed threshold rho
/// and strategy parameters (theta, beta).
struct RegretOracle {
  double rho = 1.0;
  double theta = 0.01;
  double beta = 0.0;
  std::vector<double> extreme_probs;  // p_i
  double p_star = 0.0;                // max_i p_i
  std::vector<double> theta_gaps;     // Theta_i = p* - p_i
  std::vector<double> gamma_gaps;     // Gamma_i = exact-score gap to the best arm
  std::size_t truth_index = 0;        // argmax of exact_score
  std::size_t best_prob_index = 0;    // argmax of p_i
  bool assumption_holds = true;       // p* attained at truth_index
};

/// Builds the oracle. When the tail-probability argmax disagrees with the
/// exact-score argmax a warning is written to stderr and both indices are
/// reported in the result.
RegretOracle make_regret_oracle(std::span<const GaussianArmSpec> arms, double rho,
                                double theta, double beta);

/// Per-step record of one run: selected arm, observed feedback, and the
/// cumulative count of feedbacks >= rho.
struct Trajectory {
  std::vector<std::size_t> selections;
  std::vector<double> feedbacks;
  std::vector<std::uint64_t> extreme_counts;

  void record(std::size_t arm, double feedback, double rho);
  std::size_t size() const { return selections.size(); }
};

/// Cumulative extreme-region regret R_1..R_n with R_t = t p* - sum p_{I_s}.
std::vector<double> empirical_regret(const Trajectory& trajectory,
                                     const RegretOracle& oracle);

enum class BoundForm { generic, hoeffding };

/// Regret upper bound at trial count n (n may be any real >= 2).
/// generic:   sum over Gamma_i > 0 of
///            Theta_i * (alpha ln n / psi*(Gamma_i^2 / [4 (1 + 1/theta)^2])
///                       + (alpha+2)/(alpha-2)),  psi*(e) = 2 e^2.
/// hoeffding: sum over Gamma_i > 0 of
///            Theta_i * (8 alpha ln n / (Gamma_i^4 / (1 - 1/theta)^4)
///                       + (alpha+2)/(alpha-2)).
/// The two forms are not algebraically consistent with each other; both are
/// provided and callers choose.
double theoretical_bound(const RegretOracle& oracle, double n, double alpha,
                         double theta, BoundForm form);

}  // namespace erucb
