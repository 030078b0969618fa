// CLI driver: verify residuals on a catalog immersion, scan the closed-form
// root table, integrate Legendre curves, or list the catalog.

#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lagbih/criteria.hpp"
#include "lagbih/runner.hpp"

namespace {

using namespace lagbih;

struct CommonFlags {
  std::string config_path;
  std::string immersion;
  int m = -1;
  int mu_root = -1;
  double mu = 0.0;
  bool mu_set = false;
  std::string grid;
  std::string criteria;
  std::string out;
  std::string format;
  int workers = -1;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double tol_geometry = -1.0, tol_criteria = -1.0, tol_identities = -1.0;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "key = value config file (flags win)");
  cmd->add_option("--immersion", f.immersion, "catalog key");
  cmd->add_option("--m", f.m, "chart / complex dimension");
  cmd->add_option("--mu-root", f.mu_root, "root index 0-3 into the closed-form mu set");
  cmd->add_option("--mu", f.mu, "explicit mu (overrides --mu-root)")->each([&](std::string) {
    f.mu_set = true;
  });
  cmd->add_option("--grid", f.grid, "per-axis point counts, comma separated");
  cmd->add_option("--criteria", f.criteria, "subset of split,kahler,spaceform,humbilical,reduced");
  cmd->add_option("--out", f.out, "report output path");
  cmd->add_option("--format", f.format, "json or csv");
  cmd->add_option("--workers", f.workers, "worker threads (0 = hardware)");
  cmd->add_option("--seed", f.seed, "seed for the randomized gauge checks")
      ->each([&](std::string) { f.seed_set = true; });
  cmd->add_option("--tol-geometry", f.tol_geometry, "geometry defect tolerance");
  cmd->add_option("--tol-criteria", f.tol_criteria, "criterion relative tolerance");
  cmd->add_option("--tol-identities", f.tol_identities, "identity tolerance");
}

RunConfig build_config(const CommonFlags& f) {
  RunConfig cfg;
  if (!f.config_path.empty()) cfg = parse_config_file(f.config_path);
  if (!f.immersion.empty()) cfg.immersion = f.immersion;
  if (f.m > 0) cfg.m = f.m;
  if (f.mu_root >= 0) cfg.mu_root = f.mu_root;
  if (f.mu_set) cfg.mu_value = f.mu;
  if (!f.grid.empty()) apply_config_line(cfg, "grid", f.grid);
  if (!f.criteria.empty()) apply_config_line(cfg, "criteria", f.criteria);
  if (!f.out.empty()) cfg.out_path = f.out;
  if (!f.format.empty()) cfg.format = f.format;
  if (f.workers >= 0) cfg.workers = f.workers;
  if (f.seed_set) cfg.seed = f.seed;
  if (f.tol_geometry > 0) cfg.tolerances["geometry"] = f.tol_geometry;
  if (f.tol_criteria > 0) cfg.tolerances["criteria"] = f.tol_criteria;
  if (f.tol_identities > 0) cfg.tolerances["identities"] = f.tol_identities;
  return cfg;
}

int cmd_verify(const CommonFlags& flags) {
  const RunConfig cfg = build_config(flags);
  const ResidualReport report = run_verify(cfg);
  std::printf("%-12s %s\n", "immersion:", cfg.immersion.c_str());
  for (const auto& [name, verdict] : report.verdicts)
    std::printf("  %-22s %s\n", name.c_str(), verdict.c_str());
  for (const auto& [name, value] : report.aggregate_max)
    std::printf("  max %-32s %.3e\n", name.c_str(), value);
  if (!cfg.out_path.empty()) {
    write_file(cfg.out_path, cfg.format == "csv" ? emit_csv(report) : emit_json(report));
    std::printf("report written to %s\n", cfg.out_path.c_str());
  }
  return report.pass ? 0 : 1;
}

int cmd_scan(const CommonFlags& flags, int m_lo, int m_hi, bool full_verify) {
  const RunConfig cfg = build_config(flags);
  const auto rows = run_scan(m_lo, m_hi, full_verify, cfg);
  const std::string csv = scan_csv(rows);
  if (!cfg.out_path.empty()) {
    write_file(cfg.out_path, csv);
    std::printf("scan written to %s\n", cfg.out_path.c_str());
  } else {
    std::fputs(csv.c_str(), stdout);
  }
  if (full_verify)
    for (const auto& r : rows)
      if (r.verdict != "pass") return 1;
  return 0;
}

int cmd_legendre(const std::string& profile_spec, double x_lo, double x_hi, double step,
                 const std::string& out_path) {
  // profile forms: chen:<mu>, const:<v>, sin:<c0>,<c1>,<freq>
  ScalarProfile profile;
  LegendreCurve::C2 z0, z0p;
  const LegendreCurve::C i(0.0, 1.0);
  if (profile_spec.rfind("chen:", 0) == 0) {
    const double mu = std::stod(profile_spec.substr(5));
    profile = constant_profile(lambda_from_mu(mu));
    const double c1 = std::sqrt(mu * mu / (mu * mu + 1.0));
    const double c2 = std::sqrt(1.0 / (mu * mu + 1.0));
    z0 = {c1, c2};
    z0p = {-i * c1 / mu, i * mu * c2};
  } else {
    if (profile_spec.rfind("const:", 0) == 0) {
      profile = constant_profile(std::stod(profile_spec.substr(6)));
    } else if (profile_spec.rfind("sin:", 0) == 0) {
      std::stringstream ss(profile_spec.substr(4));
      double c0, c1, freq;
      char comma;
      ss >> c0 >> comma >> c1 >> comma >> freq;
      profile = sinusoidal_profile(c0, c1, freq);
    } else {
      throw std::invalid_argument("unknown lambda profile: " + profile_spec);
    }
    z0 = {1.0, 0.0};  // great-circle initial data
    z0p = {0.0, 1.0};
  }
  const auto curve = LegendreCurve::integrate(profile, z0, z0p, x_lo, x_hi, step);
  const auto diag = curve.diagnostics();

  std::ostringstream csv;
  csv.precision(17);
  csv << "x,re_z1,im_z1,re_z2,im_z2,norm_defect,speed_defect,legendre_defect,mu\n";
  for (const auto& r : diag.rows)
    csv << r.x << "," << r.z1.real() << "," << r.z1.imag() << "," << r.z2.real() << ","
        << r.z2.imag() << "," << r.norm_defect << "," << r.speed_defect << ","
        << r.legendre_defect << "," << r.mu << "\n";
  if (!out_path.empty()) {
    write_file(out_path, csv.str());
    std::printf("curve written to %s\n", out_path.c_str());
  } else {
    std::fputs(csv.str().c_str(), stdout);
  }
  std::printf("max defects: norm %.3e speed %.3e legendre %.3e; mu in [%.12g, %.12g]\n",
              diag.max_norm_defect, diag.max_speed_defect, diag.max_legendre_defect, diag.mu_min,
              diag.mu_max);
  return 0;
}

int cmd_catalog() {
  for (const auto& entry : catalog()) {
    std::printf("%-26s %s\n", entry.key.c_str(), entry.description.c_str());
    std::printf("%-26s default criteria:", "");
    for (const auto& c : entry.default_criteria) std::printf(" %s", c.c_str());
    std::printf("\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification of biharmonicity criteria for Lagrangian immersions"};
  app.require_subcommand(1);

  CommonFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "grid-sweep residual verification");
  add_common_flags(verify, verify_flags);

  CommonFlags scan_flags;
  int m_lo = 2, m_hi = 4;
  bool full_verify = false;
  auto* scan = app.add_subcommand("scan", "closed-form mu/lambda table over m");
  add_common_flags(scan, scan_flags);
  scan->add_option("--m-min", m_lo, "smallest m (>= 2)");
  scan->add_option("--m-max", m_hi, "largest m");
  scan->add_flag("--verify", full_verify, "run the full verification per row");

  std::string profile = "chen:1.0";
  double x_lo = 0.0, x_hi = 2.0 * M_PI, step = 1e-3;
  std::string legendre_out;
  auto* legendre = app.add_subcommand("legendre", "integrate a Legendre curve and export CSV");
  legendre->add_option("--lambda-profile", profile, "chen:<mu> | const:<v> | sin:<c0>,<c1>,<f>");
  legendre->add_option("--x-min", x_lo, "interval start");
  legendre->add_option("--x-max", x_hi, "interval end");
  legendre->add_option("--step", step, "RK4 step");
  legendre->add_option("--out", legendre_out, "CSV output path");

  auto* cat = app.add_subcommand("catalog", "list built-in immersions");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(verify_flags);
    if (scan->parsed()) return cmd_scan(scan_flags, m_lo, m_hi, full_verify);
    if (legendre->parsed()) return cmd_legendre(profile, x_lo, x_hi, step, legendre_out);
    if (cat->parsed()) return cmd_catalog();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
