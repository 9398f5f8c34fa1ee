#include "erucb/strategies.hpp"

#include <cmath>
#include <stdexcept>

namespace erucb {

namespace {

std::size_t argmax_lowest_index(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

double log_trial(double trial) {
  if (trial < 1.0) throw std::invalid_argument("trial must be >= 1");
  return std::log(trial);
}

void require_nonempty(std::span<const ArmStatistics> states) {
  if (states.empty()) throw std::invalid_argument("no arms");
}

}  // namespace

PsiTransform PsiTransform::hoeffding() {
  return PsiTransform{"hoeffding", [](double y) { return std::sqrt(y / 2.0); }};
}

PsiTransform PsiTransform::identity() {
  return PsiTransform{"identity", [](double y) { return y; }};
}

void ErUcbParams::validate() const {
  if (!(theta > 0.0) || theta > 1.0) {
    throw std::invalid_argument("theta must be in (0, 1]");
  }
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
  if (!(alpha > 2.0)) throw std::invalid_argument("alpha must be > 2");
  if (!transform.inverse_conjugate) {
    throw std::invalid_argument("psi transform is not set");
  }
}

void BaselineParams::validate() const {
  if (!(epsilon >= 0.0) || epsilon > 1.0) {
    throw std::invalid_argument("epsilon must be in [0, 1]");
  }
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be > 0");
  if (!(ucb_scale > 0.0)) throw std::invalid_argument("ucb_scale must be > 0");
}

double exploitation_score(const ArmStatistics& state, double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be > 0");
  if (state.mean_shifted_sq < 0.0) {
    throw std::invalid_argument("mean_shifted_sq must be >= 0");
  }
  return state.mean_shifted + std::sqrt(state.mean_shifted_sq / theta);
}

double exploration_bonus_hoeffding(std::uint64_t pull_count, double trial,
                                   double theta) {
  if (pull_count == 0) throw std::invalid_argument("unpulled arm");
  if (!(theta > 0.0)) throw std::invalid_argument("theta must be > 0");
  const double g = std::sqrt(2.0 * log_trial(trial) / static_cast<double>(pull_count));
  return g + std::sqrt(g / theta);
}

double exploration_bonus_generic(std::uint64_t pull_count, double trial,
                                 const ErUcbParams& params) {
  if (pull_count == 0) throw std::invalid_argument("unpulled arm");
  params.validate();
  const double level = params.alpha * log_trial(trial) / static_cast<double>(pull_count);
  const double g = params.transform.inverse_conjugate(level);
  if (!(g >= 0.0)) {
    throw std::invalid_argument("psi transform returned a negative width");
  }
  return g + std::sqrt(g / params.theta);
}

Selection select_erucb(std::span<const ArmStatistics> states, std::uint64_t trial,
                       const ErUcbParams& params, ErUcbVariant variant) {
  require_nonempty(states);
  params.validate();

  Selection result;
  result.scores.reserve(states.size());
  std::vector<double> totals(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    ScoreBreakdown b;
    b.exploitation = exploitation_score(states[i], params.theta);
    if (variant == ErUcbVariant::practical) {
      b.exploration =
          exploration_bonus_hoeffding(states[i].pull_count, static_cast<double>(trial),
                                      params.theta);
      b.total = params.gamma * b.exploitation + b.exploration;
    } else {
      b.exploration = exploration_bonus_generic(states[i].pull_count,
                                                static_cast<double>(trial), params);
      b.total = b.exploitation + b.exploration;
    }
    totals[i] = b.total;
    result.scores.push_back(b);
  }
  result.index = argmax_lowest_index(totals);
  return result;
}

std::size_t select_classical_ucb(std::span<const ArmStatistics> states,
                                 std::uint64_t trial, const BaselineParams& params,
                                 double beta) {
  require_nonempty(states);
  params.validate();
  const double log_t = log_trial(static_cast<double>(trial));
  std::vector<double> scores(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].pull_count == 0) throw std::invalid_argument("unpulled arm");
    const double bonus =
        params.ucb_scale *
        std::sqrt(2.0 * log_t / static_cast<double>(states[i].pull_count));
    scores[i] = (states[i].mean_shifted + beta) + bonus;
  }
  return argmax_lowest_index(scores);
}

std::size_t select_epsilon_greedy(std::span<const ArmStatistics> states,
                                  std::mt19937_64& rng, const BaselineParams& params,
                                  double beta) {
  require_nonempty(states);
  params.validate();
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng) < params.epsilon) {
    std::uniform_int_distribution<std::size_t> pick(0, states.size() - 1);
    return pick(rng);
  }
  std::vector<double> means(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    means[i] = states[i].mean_shifted + beta;
  }
  return argmax_lowest_index(means);
}

std::vector<double> softmax_probabilities(std::span<const ArmStatistics> states,
                                          double tau, double beta) {
  require_nonempty(states);
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be > 0");
  std::vector<double> weights(states.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < states.size(); ++i) {
    weights[i] = states[i].mean_shifted + beta;
    top = std::max(top, weights[i]);
  }
  double total = 0.0;
  for (double& w : weights) {
    w = std::exp((w - top) / tau);
    total += w;
  }
  for (double& w : weights) w /= total;
  return weights;
}

std::size_t select_softmax(std::span<const ArmStatistics> states,
                           std::mt19937_64& rng, const BaselineParams& params,
                           double beta) {
  params.validate();
  const auto probs = softmax_probabilities(states, params.tau, beta);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  return probs.size() - 1;
}

std::size_t select_random(std::span<const ArmStatistics> states,
                          std::mt19937_64& rng) {
  require_nonempty(states);
  std::uniform_int_distribution<std::size_t> pick(0, states.size() - 1);
  return pick(rng);
}

}  // namespace erucb
