#include "erucb/stats.hpp"

#include <algorithm>
#include <stdexcept>

namespace erucb {

std::vector<ArmStatistics> init_statistics(std::span<const double> first_feedbacks,
                                           double beta) {
  if (first_feedbacks.empty()) {
    throw std::invalid_argument("no arms");
  }
  std::vector<ArmStatistics> states;
  states.reserve(first_feedbacks.size());
  for (double x : first_feedbacks) {
    const double shifted = x - beta;
    states.push_back(ArmStatistics{
        .pull_count = 1,
        .mean_shifted = shifted,
        .mean_shifted_sq = shifted * shifted,
        .best_feedback = x,
    });
  }
  return states;
}

ArmStatistics update_statistics(ArmStatistics state, double feedback, double beta) {
  if (state.pull_count == 0) {
    throw std::invalid_argument("unpulled arm");
  }
  const double t = static_cast<double>(state.pull_count);
  const double shifted = feedback - beta;
  state.mean_shifted = (t * state.mean_shifted + shifted) / (t + 1.0);
  state.mean_shifted_sq = (t * state.mean_shifted_sq + shifted * shifted) / (t + 1.0);
  state.pull_count += 1;
  state.best_feedback = std::max(state.best_feedback, feedback);
  return state;
}

}  // namespace erucb
