#include "erucb/regret.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace erucb {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

void require_theta(double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be > 0");
}

}  // namespace

double extreme_prob(const GaussianArmSpec& arm, double rho) {
  if (!(arm.std_dev > 0.0)) throw std::invalid_argument("std_dev must be > 0");
  const double z = (rho - arm.mean) / arm.std_dev;
  return 0.5 * std::erfc(z * kInvSqrt2);
}

std::size_t ground_truth_index(std::span<const GaussianArmSpec> arms, double theta) {
  if (arms.empty()) throw std::invalid_argument("no arms");
  require_theta(theta);
  const double width = std::sqrt(1.0 / theta);
  std::size_t best = 0;
  double best_score = arms[0].mean + width * arms[0].std_dev;
  for (std::size_t i = 1; i < arms.size(); ++i) {
    const double score = arms[i].mean + width * arms[i].std_dev;
    if (score > best_score) {
      best = i;
      best_score = score;
    }
  }
  return best;
}

double exact_score(const GaussianArmSpec& arm, double theta, double beta) {
  require_theta(theta);
  const double shifted = arm.mean - beta;
  return shifted + std::sqrt((arm.std_dev * arm.std_dev + shifted * shifted) / theta);
}

RegretOracle make_regret_oracle(std::span<const GaussianArmSpec> arms, double rho,
                                double theta, double beta) {
  if (arms.empty()) throw std::invalid_argument("no arms");
  require_theta(theta);

  RegretOracle oracle;
  oracle.rho = rho;
  oracle.theta = theta;
  oracle.beta = beta;
  oracle.extreme_probs.reserve(arms.size());

  std::vector<double> scores(arms.size());
  std::size_t best_score_arm = 0;
  std::size_t best_prob_arm = 0;
  for (std::size_t i = 0; i < arms.size(); ++i) {
    oracle.extreme_probs.push_back(extreme_prob(arms[i], rho));
    scores[i] = exact_score(arms[i], theta, beta);
    if (scores[i] > scores[best_score_arm]) best_score_arm = i;
    if (oracle.extreme_probs[i] > oracle.extreme_probs[best_prob_arm]) best_prob_arm = i;
  }

  oracle.truth_index = best_score_arm;
  oracle.best_prob_index = best_prob_arm;
  oracle.p_star = oracle.extreme_probs[best_prob_arm];
  oracle.assumption_holds =
      oracle.extreme_probs[best_score_arm] == oracle.p_star;
  if (!oracle.assumption_holds) {
    std::fprintf(stderr,
                 "warning: p* is attained at arm %zu but the exact-score argmax is "
                 "arm %zu; the p* = p_{i*} assumption does not hold for this "
                 "(rho, theta, beta)\n",
                 best_prob_arm + 1, best_score_arm + 1);
  }

  oracle.theta_gaps.reserve(arms.size());
  oracle.gamma_gaps.reserve(arms.size());
  for (std::size_t i = 0; i < arms.size(); ++i) {
    oracle.theta_gaps.push_back(oracle.p_star - oracle.extreme_probs[i]);
    oracle.gamma_gaps.push_back(scores[best_score_arm] - scores[i]);
  }
  return oracle;
}

void Trajectory::record(std::size_t arm, double feedback, double rho) {
  selections.push_back(arm);
  feedbacks.push_back(feedback);
  const std::uint64_t prev = extreme_counts.empty() ? 0 : extreme_counts.back();
  extreme_counts.push_back(prev + (feedback >= rho ? 1 : 0));
}

std::vector<double> empirical_regret(const Trajectory& trajectory,
                                     const RegretOracle& oracle) {
  std::vector<double> regret;
  regret.reserve(trajectory.size());
  double picked_prob_sum = 0.0;
  for (std::size_t t = 0; t < trajectory.size(); ++t) {
    const std::size_t arm = trajectory.selections[t];
    if (arm >= oracle.extreme_probs.size()) {
      throw std::invalid_argument("arm index out of range for the oracle");
    }
    picked_prob_sum += oracle.extreme_probs[arm];
    regret.push_back(static_cast<double>(t + 1) * oracle.p_star - picked_prob_sum);
  }
  return regret;
}

double theoretical_bound(const RegretOracle& oracle, double n, double alpha,
                         double theta, BoundForm form) {
  if (!(alpha > 2.0)) throw std::invalid_argument("alpha must be > 2");
  require_theta(theta);
  if (!(n >= 2.0)) throw std::invalid_argument("n must be >= 2");
  if (oracle.gamma_gaps.size() != oracle.theta_gaps.size() ||
      oracle.gamma_gaps.empty()) {
    throw std::invalid_argument("oracle gaps not populated");
  }

  const double log_n = std::log(n);
  const double tail = (alpha + 2.0) / (alpha - 2.0);
  double bound = 0.0;
  for (std::size_t i = 0; i < oracle.gamma_gaps.size(); ++i) {
    const double gap = oracle.gamma_gaps[i];
    if (!(gap > 0.0)) continue;
    double leading = 0.0;
    if (form == BoundForm::generic) {
      const double width = 1.0 + 1.0 / theta;
      const double eps = gap * gap / (4.0 * width * width);
      const double conjugate = 2.0 * eps * eps;
      leading = alpha * log_n / conjugate;
    } else {
      const double width = 1.0 - 1.0 / theta;
      const double width_sq = width * width;
      const double gap_sq = gap * gap;
      leading = 8.0 * alpha * log_n / (gap_sq * gap_sq / (width_sq * width_sq));
    }
    bound += oracle.theta_gaps[i] * (leading + tail);
  }
  return bound;
}

}  // namespace erucb
