#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <unistd.h>

#include "erucb/io.hpp"

using namespace erucb;

namespace {

std::filesystem::path fresh_path(const std::string& tag) {
  static int counter = 0;
  auto path = std::filesystem::temp_directory_path() /
              ("erucb_io_" + tag + "_" + std::to_string(::getpid()) + "_" +
               std::to_string(counter++) + ".csv");
  std::filesystem::remove(path);
  return path;
}

struct FileGuard {
  std::filesystem::path path;
  ~FileGuard() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("doubles round-trip through their shortest decimal form") {
  const std::vector<double> values{0.1, 0.1 + 0.2, 1.0 / 3.0, 6.103515625e-05,
                                   -0.0, 1e-300, 9.87654321e8, 1e308};
  for (double v : values) {
    CHECK(parse_double(format_double(v)) == v);
  }
}

TEST_CASE("sweep tables survive a CSV round trip exactly") {
  const std::vector<SweepRow> rows{
      {"theta", 0.0001, 1, 0.93157894736842106},
      {"theta", 0.1 + 0.2, 4, 1.0 / 7.0},
      {"gamma", 50.0, 7, 0.0},
  };
  FileGuard guard{fresh_path("sweep")};
  write_sweep_csv(guard.path.string(), rows);
  const auto back = read_sweep_csv(guard.path.string());
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].param == rows[i].param);
    CHECK(back[i].value == rows[i].value);
    CHECK(back[i].arm == rows[i].arm);
    CHECK(back[i].mean_rate == rows[i].mean_rate);
  }
}

TEST_CASE("sweep and regret tables survive a structured round trip exactly") {
  const std::vector<SweepRow> sweep_rows{
      {"beta", 1.5, 1, 0.1 + 0.2},
      {"beta", 0.0, 2, 1.0 / 3.0},
  };
  FileGuard sweep_guard{fresh_path("sweep_json")};
  write_sweep_json(sweep_guard.path.string(), sweep_rows);
  const auto sweep_back = read_sweep_json(sweep_guard.path.string());
  REQUIRE(sweep_back.size() == sweep_rows.size());
  for (std::size_t i = 0; i < sweep_rows.size(); ++i) {
    CHECK(sweep_back[i].param == sweep_rows[i].param);
    CHECK(sweep_back[i].value == sweep_rows[i].value);
    CHECK(sweep_back[i].arm == sweep_rows[i].arm);
    CHECK(sweep_back[i].mean_rate == sweep_rows[i].mean_rate);
  }

  const std::vector<RegretStudyRow> regret_rows{{77, 3.2999999999999998, 0.857}};
  FileGuard regret_guard{fresh_path("regret_json")};
  write_regret_json(regret_guard.path.string(), regret_rows);
  const auto regret_back = read_regret_json(regret_guard.path.string());
  REQUIRE(regret_back.size() == 1);
  CHECK(regret_back[0].t == regret_rows[0].t);
  CHECK(regret_back[0].strategy_count_mean == regret_rows[0].strategy_count_mean);
  CHECK(regret_back[0].truth_expectation == regret_rows[0].truth_expectation);
}

TEST_CASE("regret tables survive a CSV round trip exactly") {
  const std::vector<RegretStudyRow> rows{
      {10, 0.2, 0.11135489479616393},
      {1000, 7.6999999999999993, 11.135489479616393},
  };
  FileGuard guard{fresh_path("regret")};
  write_regret_csv(guard.path.string(), rows);
  const auto back = read_regret_csv(guard.path.string());
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].t == rows[i].t);
    CHECK(back[i].strategy_count_mean == rows[i].strategy_count_mean);
    CHECK(back[i].truth_expectation == rows[i].truth_expectation);
  }
}

TEST_CASE("run CSV lists one row per (replication, arm)") {
  ReplicatedSummary summary;
  summary.arm_count = 2;
  RunSummary run;
  run.best_feedback = 1.0625;
  run.best_arm = 0;
  run.pull_counts = {7, 3};
  run.exploitation_rates = {0.7, 0.3};
  summary.runs = {run, run};

  FileGuard guard{fresh_path("run")};
  write_run_csv(guard.path.string(), summary);

  std::ifstream in(guard.path);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "replication,arm,pull_count,exploitation_rate,best_feedback,best_arm");
  CHECK(lines[1] == "1,1,7,0.7,1.0625,1");
  CHECK(lines[4] == "2,2,3,0.3,1.0625,1");
}

TEST_CASE("structured summaries mirror the aggregate fields") {
  ExperimentConfig cfg;
  cfg.strategy = "er-ucb";
  ReplicatedSummary summary;
  summary.arm_count = 2;
  summary.best_feedback_mean = 1.05;
  summary.best_feedback_std = 0.01;
  summary.rate_mean = {0.9, 0.1};
  summary.rate_std = {0.02, 0.02};
  summary.best_arm_by_rep = {0, 0};
  summary.most_exploited_by_rep = {0, 1};
  summary.regret_mean = 1.5;
  summary.regret_std = 0.25;
  RunSummary run;
  run.best_feedback = 1.05;
  summary.runs = {run, run};

  FileGuard guard{fresh_path("summary")};
  write_summary_json(guard.path.string(), cfg, summary);

  std::ifstream in(guard.path);
  const auto doc = nlohmann::json::parse(in);
  CHECK(doc["strategy"] == "er-ucb");
  CHECK(doc["best_feedback"]["mean"].get<double>() == 1.05);
  CHECK(doc["exploitation_rates"]["mean"][0].get<double>() == 0.9);
  CHECK(doc["best_arm_by_replication"] == nlohmann::json({1, 1}));
  CHECK(doc["most_exploited_by_replication"] == nlohmann::json({1, 2}));
  CHECK(doc["regret"]["mean"].get<double>() == 1.5);
  REQUIRE(doc["replication_detail"].size() == 2);
  CHECK(doc["replication_detail"][0]["best_feedback"].get<double>() == 1.05);
  CHECK(doc["replication_detail"][0]["best_arm"].get<int>() == 1);
}

TEST_CASE("I/O failures carry the offending path") {
  const std::vector<SweepRow> rows{{"theta", 0.1, 1, 0.5}};
  CHECK_THROWS_WITH_AS(write_sweep_csv("/no-such-dir/out.csv", rows),
                       "cannot open /no-such-dir/out.csv for writing", IoError);
  CHECK_THROWS_AS(read_sweep_csv("/no-such-dir/in.csv"), IoError);
}
