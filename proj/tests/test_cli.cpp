#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "erucb/io.hpp"

using namespace erucb;

namespace {

std::string cli_path() {
  const char* path = std::getenv("ERUCB_CLI_BIN");
  REQUIRE_MESSAGE(path != nullptr,
                  "set ERUCB_CLI_BIN to the erucb binary (ctest does)");
  return path;
}

int run_cli(const std::string& args) {
  const std::string command =
      "\"" + cli_path() + "\" " + args + " > /dev/null 2> /dev/null";
  const int status = std::system(command.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path fresh_path(const std::string& tag) {
  static int counter = 0;
  auto path = std::filesystem::temp_directory_path() /
              ("erucb_cli_" + tag + "_" + std::to_string(::getpid()) + "_" +
               std::to_string(counter++));
  std::filesystem::remove(path);
  return path;
}

struct FileGuard {
  std::filesystem::path path;
  ~FileGuard() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("exit code 0 on success and --help") {
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("run --budget 50 --replications 1 --strategy random") == 0);
}

TEST_CASE("exit code 2 on configuration errors") {
  CHECK(run_cli("") == 2);                                   // missing subcommand
  CHECK(run_cli("run --strategy bogus") == 2);               // rejected flag value
  CHECK(run_cli("run --budget 3") == 2);                     // budget < K
  CHECK(run_cli("run --theta -1 --budget 50") == 2);         // invalid theta
  CHECK(run_cli("regret --env external --external-cmd true --arms 2 --budget 10 "
                "--replications 1") == 2);                   // regret needs synthetic
}

TEST_CASE("exit code 3 on environment failures") {
  CHECK(run_cli("run --env external --external-cmd false --arms 2 --budget 10 "
                "--replications 1") == 3);
  CHECK(run_cli("run --env external --external-cmd \"sleep 30\" --arms 2 --budget 10 "
                "--replications 1 --timeout 0.2") == 3);
}

TEST_CASE("run writes csv or structured output") {
  FileGuard csv{fresh_path("run_csv")};
  CHECK(run_cli("run --budget 60 --replications 2 --strategy random --seed 4 --out " +
                csv.path.string()) == 0);
  std::ifstream in(csv.path);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 1 + 2 * 7);

  FileGuard json{fresh_path("run_json")};
  CHECK(run_cli("run --budget 60 --replications 2 --strategy random --seed 4 "
                "--format structured --out " + json.path.string()) == 0);
  std::ifstream jin(json.path);
  CHECK(jin.peek() == '{');
}

TEST_CASE("sweep subcommand emits a readable table") {
  FileGuard out{fresh_path("sweep")};
  CHECK(run_cli("sweep --param theta --points 2 --replications 1 --budget 100 --out " +
                out.path.string()) == 0);
  const auto rows = read_sweep_csv(out.path.string());
  REQUIRE(rows.size() == 2 * 7);
  CHECK(rows.front().param == "theta");
  CHECK(rows.front().value == 0.0001);
  CHECK(rows.back().value == 0.5);
}

TEST_CASE("regret subcommand emits the count table") {
  FileGuard out{fresh_path("regret")};
  CHECK(run_cli("regret --budget 200 --replications 2 --stride 50 --strategy random "
                "--out " + out.path.string()) == 0);
  const auto rows = read_regret_csv(out.path.string());
  REQUIRE(rows.size() == 4);
  CHECK(rows.back().t == 200);
}

TEST_CASE("a key=value config file seeds the flags") {
  FileGuard conf{fresh_path("conf")};
  {
    std::ofstream out(conf.path);
    out << "budget=50\nreplications=1\nstrategy=random\nseed=9\n";
  }
  FileGuard csv{fresh_path("conf_run")};
  CHECK(run_cli("run --config " + conf.path.string() + " --out " + csv.path.string()) ==
        0);
  std::ifstream in(csv.path);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 1 + 1 * 7);  // one replication, seven arms

  // Explicit flags beat file values.
  FileGuard override_csv{fresh_path("conf_override")};
  CHECK(run_cli("run --config " + conf.path.string() + " --replications 2 --out " +
                override_csv.path.string()) == 0);
  std::ifstream oin(override_csv.path);
  lines = 0;
  while (std::getline(oin, line)) ++lines;
  CHECK(lines == 1 + 2 * 7);

  // Unknown keys are configuration errors.
  FileGuard bad{fresh_path("conf_bad")};
  {
    std::ofstream out(bad.path);
    out << "no_such_key=1\n";
  }
  CHECK(run_cli("run --config " + bad.path.string()) == 2);
}
