#include "erucb/environment.hpp"

#include <cerrno>
#include <cmath>
#include <csignal>
#include <cstring>
#include <mutex>
#include <random>
#include <stdexcept>

#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace erucb {

namespace {

using nlohmann::json;

class SyntheticEnvironment final : public Environment {
 public:
  SyntheticEnvironment(std::vector<GaussianArmSpec> specs, RngStream stream)
      : specs_(std::move(specs)) {
    if (specs_.empty()) throw std::invalid_argument("no arms");
    engines_.reserve(specs_.size());
    distributions_.reserve(specs_.size());
    for (std::size_t i = 0; i < specs_.size(); ++i) {
      if (!(specs_[i].std_dev > 0.0)) {
        throw std::invalid_argument("std_dev must be > 0");
      }
      engines_.push_back(make_engine(stream, i));
      distributions_.emplace_back(specs_[i].mean, specs_[i].std_dev);
    }
  }

  std::size_t arm_count() const noexcept override { return specs_.size(); }

  double sample(std::size_t arm, std::uint64_t /*trial*/) override {
    if (arm >= specs_.size()) throw std::invalid_argument("arm index out of range");
    return distributions_[arm](engines_[arm]);
  }

 private:
  std::vector<GaussianArmSpec> specs_;
  std::vector<std::mt19937_64> engines_;
  std::vector<std::normal_distribution<double>> distributions_;
};

void ignore_sigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

[[noreturn]] void throw_errno(const std::string& what) {
  throw EnvironmentError(what + ": " + std::strerror(errno));
}

}  // namespace

std::vector<GaussianArmSpec> paper7_arms() {
  return {
      {0.84, 0.07}, {0.84, 0.01}, {0.85, 0.04}, {0.85, 0.02},
      {0.88, 0.01}, {0.88, 0.02}, {0.89, 0.01},
  };
}

std::unique_ptr<Environment> make_synthetic_env(std::vector<GaussianArmSpec> specs,
                                                RngStream stream) {
  return std::make_unique<SyntheticEnvironment>(std::move(specs), stream);
}

ExternalEnvironment::ExternalEnvironment(std::string command, std::size_t arm_count,
                                         std::chrono::milliseconds timeout)
    : command_(std::move(command)), arms_(arm_count), timeout_(timeout) {
  if (arms_ == 0) throw std::invalid_argument("arm count must be >= 1");
  if (command_.empty()) throw std::invalid_argument("external command is empty");
  ignore_sigpipe();

  int to_child[2] = {-1, -1};
  int from_child[2] = {-1, -1};
  if (::pipe(to_child) != 0) throw_errno("pipe");
  if (::pipe(from_child) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    throw_errno("pipe");
  }

  const pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) ::close(fd);
    throw_errno("fork");
  }
  if (pid == 0) {
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    for (int fd : {to_child[0], to_child[1], from_child[0], from_child[1]}) ::close(fd);
    ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }

  child_pid_ = pid;
  to_child_ = to_child[1];
  from_child_ = from_child[0];
  ::close(to_child[0]);
  ::close(from_child[1]);
}

ExternalEnvironment::~ExternalEnvironment() {
  if (to_child_ >= 0) ::close(to_child_);
  if (from_child_ >= 0) ::close(from_child_);
  if (child_pid_ > 0) {
    // Closing stdin asks the child to exit; escalate if it lingers.
    int status = 0;
    for (int i = 0; i < 50; ++i) {
      if (::waitpid(child_pid_, &status, WNOHANG) != 0) return;
      ::usleep(10 * 1000);
    }
    ::kill(child_pid_, SIGKILL);
    ::waitpid(child_pid_, &status, 0);
  }
}

void ExternalEnvironment::write_request(const std::string& line) {
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(to_child_, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      if (errno == EPIPE) {
        throw EnvironmentError("evaluator process exited while a request was pending "
                               "(command: " + command_ + ")");
      }
      throw_errno("write to evaluator");
    }
    written += static_cast<std::size_t>(n);
  }
}

std::string ExternalEnvironment::read_response_line() {
  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  for (;;) {
    const auto newline = read_buffer_.find('\n');
    if (newline != std::string::npos) {
      std::string line = read_buffer_.substr(0, newline);
      read_buffer_.erase(0, newline + 1);
      return line;
    }

    const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (remaining.count() <= 0) {
      throw EnvironmentError("timed out waiting for an evaluator response "
                             "(command: " + command_ + ")");
    }
    struct pollfd pfd = {from_child_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(remaining.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw_errno("poll on evaluator output");
    }
    if (ready == 0) {
      throw EnvironmentError("timed out waiting for an evaluator response "
                             "(command: " + command_ + ")");
    }

    char chunk[4096];
    const ssize_t n = ::read(from_child_, chunk, sizeof(chunk));
    if (n < 0) {
      if (errno == EINTR) continue;
      throw_errno("read from evaluator");
    }
    if (n == 0) {
      throw EnvironmentError("evaluator process closed its output "
                             "(command: " + command_ + ")");
    }
    read_buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

double ExternalEnvironment::sample(std::size_t arm, std::uint64_t trial) {
  if (arm >= arms_) throw std::invalid_argument("arm index out of range");
  if (trial <= last_trial_) {
    throw EnvironmentError("trial numbers must be strictly increasing");
  }
  last_trial_ = trial;

  json request = {{"arm", arm + 1}, {"trial", trial}};
  write_request(request.dump() + "\n");

  const std::string line = read_response_line();
  const json response = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (response.is_discarded()) {
    throw EnvironmentError("malformed evaluator response: " + line);
  }
  if (!response.is_object() || !response.contains("feedback") ||
      !response["feedback"].is_number()) {
    throw EnvironmentError("evaluator response lacks a numeric \"feedback\" field: " +
                           line);
  }
  const double feedback = response["feedback"].get<double>();
  if (!std::isfinite(feedback)) {
    throw EnvironmentError("evaluator returned a non-finite feedback: " + line);
  }
  ++exchanges_;
  return feedback;
}

std::unique_ptr<ExternalEnvironment> make_external_env(
    std::string command, std::size_t arm_count, std::chrono::milliseconds timeout) {
  return std::make_unique<ExternalEnvironment>(std::move(command), arm_count, timeout);
}

}  // namespace erucb
