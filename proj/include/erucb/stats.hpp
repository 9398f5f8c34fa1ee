#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace erucb {

/// Per-arm sufficient statistics, maintained incrementally over a run.
/// mean_shifted and mean_shifted_sq are the running means of (x - beta)
/// and (x - beta)^2; best_feedback tracks the raw maximum for reporting.
struct ArmStatistics {
  std::uint64_t pull_count = 0;
  double mean_shifted = 0.0;
  double mean_shifted_sq = 0.0;
  double best_feedback = -std::numeric_limits<double>::infinity();
};

/// One initial pull per arm: pull_count = 1, means seeded from the single
/// shifted observation. Throws std::invalid_argument on empty input.
std::vector<ArmStatistics> init_statistics(std::span<const double> first_feedbacks,
                                           double beta);

/// Folds one more feedback into the running means:
///   mean <- (T * mean + v) / (T + 1)
/// Feedbacks are accepted as-is; nothing is clamped.
ArmStatistics update_statistics(ArmStatistics state, double feedback, double beta);

}  // namespace erucb
