#include "erucb/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace erucb {

namespace {

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

std::ifstream open_for_read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  return in;
}

void finish_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("failed while writing " + path);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  return fields;
}

std::uint64_t parse_u64(const std::string& text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw IoError("not an unsigned integer: " + text);
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw IoError("failed to format a double");
  return std::string(buffer, ptr);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw IoError("not a real number: " + text);
  }
  return value;
}

void write_run_csv(const std::string& path, const ReplicatedSummary& summary) {
  auto out = open_for_write(path);
  out << "replication,arm,pull_count,exploitation_rate,best_feedback,best_arm\n";
  for (std::size_t r = 0; r < summary.runs.size(); ++r) {
    const auto& run = summary.runs[r];
    for (std::size_t arm = 0; arm < run.pull_counts.size(); ++arm) {
      out << (r + 1) << ',' << (arm + 1) << ',' << run.pull_counts[arm] << ','
          << format_double(run.exploitation_rates[arm]) << ','
          << format_double(run.best_feedback) << ',' << (run.best_arm + 1) << '\n';
    }
  }
  finish_write(out, path);
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  auto out = open_for_write(path);
  out << "param_name,param_value,arm,mean_exploitation_rate\n";
  for (const auto& row : rows) {
    out << row.param << ',' << format_double(row.value) << ',' << row.arm << ','
        << format_double(row.mean_rate) << '\n';
  }
  finish_write(out, path);
}

std::vector<SweepRow> read_sweep_csv(const std::string& path) {
  auto in = open_for_read(path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty sweep file: " + path);
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 4) throw IoError("malformed sweep row in " + path + ": " + line);
    rows.push_back(SweepRow{fields[0], parse_double(fields[1]),
                            static_cast<std::size_t>(parse_u64(fields[2])),
                            parse_double(fields[3])});
  }
  return rows;
}

void write_regret_csv(const std::string& path, const std::vector<RegretStudyRow>& rows) {
  auto out = open_for_write(path);
  out << "t,strategy_count_mean,truth_expectation\n";
  for (const auto& row : rows) {
    out << row.t << ',' << format_double(row.strategy_count_mean) << ','
        << format_double(row.truth_expectation) << '\n';
  }
  finish_write(out, path);
}

std::vector<RegretStudyRow> read_regret_csv(const std::string& path) {
  auto in = open_for_read(path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty regret file: " + path);
  std::vector<RegretStudyRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 3) throw IoError("malformed regret row in " + path + ": " + line);
    rows.push_back(RegretStudyRow{parse_u64(fields[0]), parse_double(fields[1]),
                                  parse_double(fields[2])});
  }
  return rows;
}

void write_sweep_json(const std::string& path, const std::vector<SweepRow>& rows) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& row : rows) {
    doc.push_back({{"param_name", row.param},
                   {"param_value", row.value},
                   {"arm", row.arm},
                   {"mean_exploitation_rate", row.mean_rate}});
  }
  auto out = open_for_write(path);
  out << doc.dump(2) << '\n';
  finish_write(out, path);
}

std::vector<SweepRow> read_sweep_json(const std::string& path) {
  auto in = open_for_read(path);
  const auto doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_array()) {
    throw IoError("malformed sweep file: " + path);
  }
  std::vector<SweepRow> rows;
  for (const auto& item : doc) {
    rows.push_back(SweepRow{item.at("param_name").get<std::string>(),
                            item.at("param_value").get<double>(),
                            item.at("arm").get<std::size_t>(),
                            item.at("mean_exploitation_rate").get<double>()});
  }
  return rows;
}

void write_regret_json(const std::string& path,
                       const std::vector<RegretStudyRow>& rows) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& row : rows) {
    doc.push_back({{"t", row.t},
                   {"strategy_count_mean", row.strategy_count_mean},
                   {"truth_expectation", row.truth_expectation}});
  }
  auto out = open_for_write(path);
  out << doc.dump(2) << '\n';
  finish_write(out, path);
}

std::vector<RegretStudyRow> read_regret_json(const std::string& path) {
  auto in = open_for_read(path);
  const auto doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_array()) {
    throw IoError("malformed regret file: " + path);
  }
  std::vector<RegretStudyRow> rows;
  for (const auto& item : doc) {
    rows.push_back(RegretStudyRow{item.at("t").get<std::uint64_t>(),
                                  item.at("strategy_count_mean").get<double>(),
                                  item.at("truth_expectation").get<double>()});
  }
  return rows;
}

void write_summary_json(const std::string& path, const ExperimentConfig& config,
                        const ReplicatedSummary& summary) {
  nlohmann::json doc;
  doc["environment"] = config.env;
  doc["strategy"] = config.strategy;
  doc["budget"] = config.budget;
  doc["replications"] = summary.runs.size();
  doc["seed"] = config.seed;
  doc["rho"] = config.rho;
  doc["single_run"] = summary.single_run;
  doc["best_feedback"] = {{"mean", summary.best_feedback_mean},
                          {"std", summary.best_feedback_std}};
  doc["exploitation_rates"] = {{"mean", summary.rate_mean}, {"std", summary.rate_std}};

  auto one_based = [](const std::vector<std::size_t>& arms) {
    std::vector<std::size_t> out;
    out.reserve(arms.size());
    for (std::size_t arm : arms) out.push_back(arm + 1);
    return out;
  };
  doc["best_arm_by_replication"] = one_based(summary.best_arm_by_rep);
  doc["most_exploited_by_replication"] = one_based(summary.most_exploited_by_rep);
  if (summary.regret_mean) {
    doc["regret"] = {{"mean", *summary.regret_mean}, {"std", *summary.regret_std}};
  }

  auto& details = doc["replication_detail"];
  details = nlohmann::json::array();
  for (const auto& run : summary.runs) {
    nlohmann::json item = {{"best_feedback", run.best_feedback},
                           {"best_arm", run.best_arm + 1},
                           {"best_trial", run.best_trial},
                           {"most_exploited_arm", run.most_exploited_arm + 1},
                           {"pull_counts", run.pull_counts},
                           {"exploitation_rates", run.exploitation_rates}};
    if (run.final_regret) item["regret"] = *run.final_regret;
    details.push_back(std::move(item));
  }

  auto out = open_for_write(path);
  out << doc.dump(2) << '\n';
  finish_write(out, path);
}

}  // namespace erucb
