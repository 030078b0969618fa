#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lagbih {

inline constexpr const char* kEngineVersion = "0.1.0";

struct RunConfig {
  std::string immersion = "chen";
  int m = 2;
  std::optional<int> mu_root;      // 0..3 into mu_roots(m)
  std::optional<double> mu_value;  // explicit mu, overrides mu_root
  std::vector<int> grid;           // per-axis counts; empty = defaults
  std::map<std::string, double> tolerances = {
      {"geometry", 1e-8}, {"criteria", 1e-6}, {"identities", 1e-10}};
  std::vector<std::string> criteria;  // empty = catalog defaults
  std::string out_path;
  std::string format = "json";
  int workers = 0;  // 0 = hardware concurrency
  std::uint64_t seed = 12345;
  int gauge_checks = 5;  // points re-evaluated under a random frame gauge

  double tol(const std::string& name) const;
  void validate() const;
};

// Flat key = value file (with # comments); flags override parsed values.
RunConfig parse_config_file(const std::string& path);
void apply_config_line(RunConfig& config, const std::string& key, const std::string& value);

struct CriterionRecord {
  double tangential_abs = 0.0;
  double normal_abs = 0.0;
  double tangential_rel = 0.0;
  double normal_rel = 0.0;
  double scale = 0.0;
  bool applicable = true;
  std::string skip_reason;
  std::map<std::string, double> per_equation;
};

struct PointRecord {
  std::vector<double> point;
  std::map<std::string, double> defects;
  std::map<std::string, CriterionRecord> criteria;
};

struct ResidualReport {
  std::map<std::string, std::string> config_echo;
  std::string engine_version;
  std::string timestamp;
  std::vector<PointRecord> points;
  std::map<std::string, double> aggregate_max;
  std::map<std::string, double> aggregate_mean;
  std::map<std::string, std::string> verdicts;  // pass / fail / skipped / no-points
  bool pass = false;
};

std::string emit_json(const ResidualReport& report);
std::string emit_csv(const ResidualReport& report);
ResidualReport parse_json_report(const std::string& text);
void write_file(const std::string& path, const std::string& content);

}  // namespace lagbih
