#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "erucb/regret.hpp"
#include "erucb/rng.hpp"

namespace erucb {

/// Environment construction or protocol failure; runs abort on it.
class EnvironmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A set of stochastic feedback sources. Sampling one arm never mutates
/// another arm's state. One environment instance belongs to one run.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual std::size_t arm_count() const noexcept = 0;
  virtual double sample(std::size_t arm, std::uint64_t trial) = 0;
};

/// The 7-arm Gaussian preset: G1(0.84, 0.07^2) .. G7(0.89, 0.01^2).
std::vector<GaussianArmSpec> paper7_arms();

/// Independent Gaussian arms; arm i draws from its own RNG lane of `stream`.
std::unique_ptr<Environment> make_synthetic_env(std::vector<GaussianArmSpec> specs,
                                                RngStream stream);

/// Arms served by a child process over a line-delimited protocol on its
/// standard input/output, one exchange per trial:
///   request:  {"arm": <1-based int>, "trial": <1-based int>}
///   response: {"feedback": <finite real>}
/// Child exit, malformed responses, non-finite feedbacks and timeouts all
/// raise EnvironmentError.
class ExternalEnvironment final : public Environment {
 public:
  ExternalEnvironment(std::string command, std::size_t arm_count,
                      std::chrono::milliseconds timeout);
  ~ExternalEnvironment() override;

  ExternalEnvironment(const ExternalEnvironment&) = delete;
  ExternalEnvironment& operator=(const ExternalEnvironment&) = delete;

  std::size_t arm_count() const noexcept override { return arms_; }
  double sample(std::size_t arm, std::uint64_t trial) override;

  /// Completed request/response pairs so far.
  std::uint64_t exchange_count() const noexcept { return exchanges_; }

 private:
  void write_request(const std::string& line);
  std::string read_response_line();

  std::string command_;
  std::size_t arms_ = 0;
  std::chrono::milliseconds timeout_{0};
  int child_pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string read_buffer_;
  std::uint64_t exchanges_ = 0;
  std::uint64_t last_trial_ = 0;
};

std::unique_ptr<ExternalEnvironment> make_external_env(
    std::string command, std::size_t arm_count, std::chrono::milliseconds timeout);

}  // namespace erucb
