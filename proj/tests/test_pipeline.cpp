#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lagbih/runner.hpp"

using namespace lagbih;

namespace {

RunConfig small_chen_config() {
  RunConfig cfg;
  cfg.immersion = "chen";
  cfg.m = 2;
  cfg.mu_root = 0;
  cfg.grid = {6, 6};
  cfg.workers = 2;
  cfg.gauge_checks = 2;
  return cfg;
}

}  // namespace

TEST_CASE("run_verify: chen family passes every verdict") {
  const auto report = run_verify(small_chen_config());
  CHECK(report.pass);
  CHECK(report.verdicts.at("structure") == "pass");
  CHECK(report.verdicts.at("split") == "pass");
  CHECK(report.verdicts.at("kahler") == "pass");
  CHECK(report.verdicts.at("spaceform") == "pass");
  CHECK(report.verdicts.at("humbilical") == "pass");
  CHECK(report.verdicts.at("reduced") == "pass");
  CHECK(report.verdicts.at("identities") == "pass");
  CHECK(report.points.size() == 36);
  CHECK(report.aggregate_max.at("defect.lagrangian") < 1e-10);
  CHECK(report.aggregate_max.at("defect.pnmc") < 1e-8);
  CHECK(report.aggregate_max.at("defect.fit_residual") < 1e-8);
  CHECK(report.aggregate_max.at("spaceform.normal_rel") < 1e-6);
}

TEST_CASE("run_verify: circle fails spaceform with unit normal residual") {
  RunConfig cfg;
  cfg.immersion = "circle";
  cfg.grid = {16};
  const auto report = run_verify(cfg);
  CHECK_FALSE(report.pass);
  CHECK(report.verdicts.at("spaceform") == "fail");
  CHECK(report.verdicts.at("structure") == "pass");
  CHECK(report.aggregate_max.at("spaceform.normal_abs") == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(report.aggregate_max.at("spaceform.normal_rel") == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("run_verify: perturbed mu fails spaceform and identities") {
  RunConfig cfg = small_chen_config();
  cfg.mu_value = 1.05 * mu_roots(2).roots[0];
  const auto report = run_verify(cfg);
  CHECK_FALSE(report.pass);
  CHECK(report.verdicts.at("spaceform") == "fail");
  CHECK(report.verdicts.at("identities") == "fail");
  CHECK(report.aggregate_max.at("spaceform.normal_rel") > 1e-2);
  CHECK(report.aggregate_max.at("identities.res_53pp") > 1e-2);
  // structure is intact: it is still a genuine PNMC H-umbilical immersion
  CHECK(report.verdicts.at("structure") == "pass");
}

TEST_CASE("run_verify: holomorphic control fails the structure gate") {
  RunConfig cfg;
  cfg.immersion = "holomorphic-control";
  cfg.grid = {5, 5};
  const auto report = run_verify(cfg);
  CHECK_FALSE(report.pass);
  CHECK(report.verdicts.at("structure") == "fail");
  CHECK(report.aggregate_max.at("defect.lagrangian") > 0.5);
  // the complex line is minimal hence biharmonic: split itself passes
  CHECK(report.verdicts.at("split") == "pass");
}

TEST_CASE("run_verify: worker count does not change aggregates") {
  RunConfig cfg = small_chen_config();
  cfg.workers = 1;
  const auto r1 = run_verify(cfg);
  cfg.workers = 4;
  const auto r4 = run_verify(cfg);
  REQUIRE(r1.aggregate_max.size() == r4.aggregate_max.size());
  for (const auto& [name, value] : r1.aggregate_max) {
    CAPTURE(name);
    CHECK(r4.aggregate_max.at(name) == value);  // bitwise identical
  }
  for (const auto& [name, value] : r1.aggregate_mean) CHECK(r4.aggregate_mean.at(name) == value);
}

TEST_CASE("run_verify: clifford torus is harmonic (skipped fit, zero residuals)") {
  RunConfig cfg;
  cfg.immersion = "clifford-lagrangian-torus";
  cfg.m = 2;
  cfg.grid = {5, 5};
  const auto report = run_verify(cfg);
  CHECK(report.pass);
  CHECK(report.aggregate_max.at("split.normal_abs") < 1e-8);
  CHECK(report.aggregate_max.at("kahler.normal_abs") < 1e-8);
  CHECK(report.aggregate_max.at("spaceform.normal_abs") < 1e-8);
}

TEST_CASE("report invariants: aggregates match records, verdict rule") {
  const auto report = run_verify(small_chen_config());
  double worst = 0.0;
  for (const auto& p : report.points)
    worst = std::max(worst, p.criteria.at("spaceform").normal_rel);
  CHECK(report.aggregate_max.at("spaceform.normal_rel") == worst);
  const bool should_pass = worst <= 1e-6;
  CHECK((report.verdicts.at("spaceform") == "pass") == should_pass);
}

TEST_CASE("json round trip is structurally identical") {
  const auto report = run_verify(small_chen_config());
  const std::string text = emit_json(report);
  const auto parsed = parse_json_report(text);
  CHECK(parsed.engine_version == report.engine_version);
  CHECK(parsed.timestamp == report.timestamp);
  CHECK(parsed.verdicts == report.verdicts);
  CHECK(parsed.pass == report.pass);
  CHECK(parsed.aggregate_max == report.aggregate_max);
  CHECK(parsed.aggregate_mean == report.aggregate_mean);
  CHECK(parsed.config_echo == report.config_echo);
  REQUIRE(parsed.points.size() == report.points.size());
  for (size_t k = 0; k < parsed.points.size(); ++k) {
    CHECK(parsed.points[k].point == report.points[k].point);
    CHECK(parsed.points[k].defects == report.points[k].defects);
    REQUIRE(parsed.points[k].criteria.size() == report.points[k].criteria.size());
    for (const auto& [name, c] : report.points[k].criteria) {
      const auto& pc = parsed.points[k].criteria.at(name);
      CHECK(pc.tangential_abs == c.tangential_abs);
      CHECK(pc.per_equation == c.per_equation);
    }
  }
  // emit is deterministic given the report
  CHECK(emit_json(report) == text);
}

TEST_CASE("csv: one row per grid point plus header") {
  const auto report = run_verify(small_chen_config());
  const std::string csv = emit_csv(report);
  size_t rows = 0;
  for (char c : csv) rows += c == '\n';
  CHECK(rows == report.points.size() + 1);
  // header names the point columns and residual columns
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header.find("x0") == 0);
  CHECK(header.find("spaceform_normal_rel") != std::string::npos);
}

TEST_CASE("empty report carries an explicit no-points verdict") {
  // assembled directly: the config invariant forbids grids this small
  RunConfig cfg = small_chen_config();
  cfg.grid = {2, 2};
  CHECK_THROWS_AS((void)run_verify(cfg), std::invalid_argument);
  ResidualReport empty;
  empty.engine_version = kEngineVersion;
  empty.verdicts["overall"] = "no-points";
  const std::string text = emit_json(empty);
  const auto parsed = parse_json_report(text);
  CHECK(parsed.verdicts.at("overall") == "no-points");
  CHECK_FALSE(parsed.pass);
  CHECK(emit_csv(empty) == "\n");
}

TEST_CASE("config file parsing with flag-style overrides") {
  const std::string path = "/tmp/lagbih_test_config.txt";
  {
    std::ofstream out(path);
    out << "# fixture\n"
        << "immersion = chen\n"
        << "m = 3\n"
        << "mu_root = 1\n"
        << "grid = 5,5,5\n"
        << "criteria = split, spaceform\n"
        << "tol-criteria = 2e-6\n"
        << "workers = 3\n"
        << "seed = 99\n";
  }
  RunConfig cfg = parse_config_file(path);
  CHECK(cfg.immersion == "chen");
  CHECK(cfg.m == 3);
  CHECK(cfg.mu_root == 1);
  CHECK(cfg.grid == std::vector<int>{5, 5, 5});
  CHECK(cfg.criteria == std::vector<std::string>{"split", "spaceform"});
  CHECK(cfg.tolerances.at("criteria") == 2e-6);
  CHECK(cfg.workers == 3);
  CHECK(cfg.seed == 99);
  // overrides win
  apply_config_line(cfg, "m", "2");
  apply_config_line(cfg, "grid", "6,6");
  CHECK(cfg.m == 2);
  CHECK(cfg.grid == std::vector<int>{6, 6});
  std::remove(path.c_str());

  RunConfig bad;
  bad.grid = {3};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_line(bad, "nonsense", "1"), std::invalid_argument);
}

TEST_CASE("catalog lookups") {
  CHECK(catalog().size() == 6);
  CHECK(catalog_entry("chen").key == "chen");
  CHECK_THROWS_AS(catalog_entry("nope"), std::invalid_argument);
  RunConfig cfg;
  cfg.immersion = "chen";
  cfg.m = 2;
  cfg.mu_root = 2;
  CHECK(resolve_mu(cfg) == mu_roots(2).roots[2]);
  cfg.mu_value = 0.5;
  CHECK(resolve_mu(cfg) == 0.5);
}

TEST_CASE("scan: fixed header, identity residuals, self-consistent a") {
  const auto rows = run_scan(2, 4, false, RunConfig{});
  CHECK(rows.size() == 12);
  for (const auto& r : rows) {
    CHECK(r.res_516 < 1e-10);
    CHECK(r.res_53pp < 1e-10);
    CHECK(r.res_lambda < 1e-10);
    CHECK(std::abs(r.a - (r.lambda + (r.m - 1) * r.mu) / r.m) < 1e-14);
    CHECK(r.verdict == "skipped");
  }
  const std::string csv = scan_csv(rows);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "m,root_index,mu,lambda,a,res_516,res_53pp,res_lambda,verdict");
  size_t lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == 12);
}

TEST_CASE("scan with verification gate") {
  RunConfig base;
  base.grid = {6, 6};
  base.gauge_checks = 1;
  auto rows = run_scan(2, 2, true, base);
  CHECK(rows.size() == 4);
  for (const auto& r : rows) CHECK(r.verdict == "pass");
}

TEST_CASE("run_verify: warped-from-ode is a genuine but non-biharmonic immersion") {
  RunConfig cfg;
  cfg.immersion = "warped-from-ode";
  cfg.m = 2;
  cfg.grid = {6, 6};
  cfg.criteria = {"split", "spaceform", "humbilical"};
  const auto report = run_verify(cfg);
  CHECK_FALSE(report.pass);
  // a consistent immersion (structure passes) that is not biharmonic
  CHECK(report.verdicts.at("structure") == "pass");
  CHECK(report.verdicts.at("spaceform") == "fail");
  CHECK(report.aggregate_max.at("defect.fit_residual") < 1e-8);
  CHECK(report.aggregate_max.at("defect.lagrangian") < 1e-8);
  CHECK(report.aggregate_max.at("defect.pnmc") > 1e-3);
  CHECK(report.aggregate_max.at("spaceform.normal_rel") > 1e-3);
}
