#pragma once

#include "lagbih/catalog.hpp"
#include "lagbih/report.hpp"

namespace lagbih {

// Full pipeline on a catalog immersion: grid sweep (deterministic parallel
// map with ordered reduction), structure defects, selected criteria,
// aggregates and verdicts. Exit-status semantics live in the CLI.
ResidualReport run_verify(const RunConfig& config);
ResidualReport run_verify(const RunConfig& config, const ImmersionSpec& spec);

struct ScanRow {
  int m = 0;
  int root_index = 0;
  double mu = 0.0;
  double lambda = 0.0;
  double a = 0.0;
  double res_516 = 0.0;
  double res_53pp = 0.0;
  double res_lambda = 0.0;
  std::string verdict;  // pass/fail when verified, "skipped" otherwise
};

// Closed-form table over m in [m_lo, m_hi] and the four roots; when
// full_verify is set each row also runs run_verify on the chen immersion.
std::vector<ScanRow> run_scan(int m_lo, int m_hi, bool full_verify,
                              const RunConfig& base_config);
std::string scan_csv(const std::vector<ScanRow>& rows);

}  // namespace lagbih
