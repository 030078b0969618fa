#include "lagbih/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "lagbih/criteria.hpp"

namespace lagbih {

namespace {

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

CriterionRecord to_record(const CriterionResidual& r) {
  CriterionRecord rec;
  rec.tangential_abs = r.tangential_norm;
  rec.normal_abs = r.normal_norm;
  rec.tangential_rel = r.tangential_rel();
  rec.normal_rel = r.normal_rel();
  rec.scale = r.scale;
  rec.applicable = r.applicable;
  rec.skip_reason = r.skip_reason;
  rec.per_equation = r.per_equation;
  return rec;
}

CriterionResidual evaluate_criterion(const std::string& name, const GeometryContext& ctx) {
  if (name == "split") return split_residual(ctx);
  if (name == "kahler") return kahler_residual(ctx);
  if (name == "spaceform") return spaceform_residual(ctx);
  if (name == "humbilical") return humbilical_residual(ctx);
  if (name == "reduced") return reduced_residual(ctx);
  throw std::invalid_argument("unknown criterion: " + name);
}

PointRecord evaluate_point(const ImmersionSpec& spec, const std::vector<std::string>& criteria,
                           const std::vector<double>& point) {
  GeometryContext ctx(spec, point);
  PointRecord rec;
  rec.point = point;

  rec.defects["lagrangian"] = lagrangian_defect(ctx);
  rec.defects["frame_orthonormality"] = ctx.frame_orthonormality_defect();
  rec.defects["b_symmetry"] = ctx.b_symmetry_defect();
  rec.defects["shape_duality"] = ctx.shape_duality_defect();
  rec.defects["codazzi"] = ctx.codazzi_residual();
  auto [t1, t2] = ctx.tension_two_routes();
  rec.defects["tension_mismatch"] = (t1 - t2).norm();
  rec.defects["ricci_route_gap"] =
      (ctx.intrinsic_ricci() - ctx.intrinsic_ricci_via_metric_jets()).cwiseAbs().maxCoeff();
  rec.defects["h_norm"] = ctx.mean_curvature_norm();
  if (ctx.model().is_lift()) {
    rec.defects["lift_norm"] = ctx.lift_norm_defect();
    rec.defects["lift_vertical"] = ctx.lift_vertical_defect();
  }

  const auto fit = humbilical_fit(ctx);
  if (fit.defined && !fit.minimal_point) {
    rec.defects["fit_residual"] = fit.fit_residual;
    rec.defects["lambda"] = fit.lambda;
    rec.defects["mu"] = fit.mu;
    rec.defects["a"] = fit.a;
    rec.defects["k"] = fit.k;
    rec.defects["k_spread"] = fit.k_spread;
  }
  if (const auto pnmc = pnmc_defect(ctx)) rec.defects["pnmc"] = *pnmc;

  for (const auto& name : criteria) rec.criteria[name] = to_record(evaluate_criterion(name, ctx));
  return rec;
}

double gauge_consistency_spread(const ImmersionSpec& spec, const std::vector<double>& point,
                                const PointRecord& base, std::mt19937_64& rng) {
  const int m = spec.map.chart_dim;
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = gauss(rng);
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();

  FrameOptions opts;
  opts.gauge = q;
  GeometryContext ctx(spec, point, opts);
  double spread = std::abs(lagrangian_defect(ctx) - base.defects.at("lagrangian"));
  const auto fit = humbilical_fit(ctx);
  if (fit.defined && !fit.minimal_point && base.defects.count("lambda")) {
    spread = std::max(spread, std::abs(fit.lambda - base.defects.at("lambda")));
    spread = std::max(spread, std::abs(fit.mu - base.defects.at("mu")));
    spread = std::max(spread, std::abs(fit.k - base.defects.at("k")));
    spread = std::max(spread, std::abs(fit.fit_residual - base.defects.at("fit_residual")));
  }
  if (const auto pnmc = pnmc_defect(ctx); pnmc && base.defects.count("pnmc"))
    spread = std::max(spread, std::abs(*pnmc - base.defects.at("pnmc")));
  const auto sf = spaceform_residual(ctx);
  if (base.criteria.count("spaceform")) {
    spread = std::max(spread,
                      std::abs(sf.tangential_norm - base.criteria.at("spaceform").tangential_abs));
    spread = std::max(spread, std::abs(sf.normal_norm - base.criteria.at("spaceform").normal_abs));
  }
  return spread;
}

std::map<std::string, std::string> echo_config(const RunConfig& c) {
  std::map<std::string, std::string> echo;
  echo["immersion"] = c.immersion;
  echo["m"] = std::to_string(c.m);
  if (c.mu_root) echo["mu_root"] = std::to_string(*c.mu_root);
  if (c.mu_value) echo["mu"] = std::to_string(*c.mu_value);
  std::ostringstream grid;
  for (size_t i = 0; i < c.grid.size(); ++i) grid << (i ? "," : "") << c.grid[i];
  echo["grid"] = grid.str();
  std::ostringstream crit;
  for (size_t i = 0; i < c.criteria.size(); ++i) crit << (i ? "," : "") << c.criteria[i];
  echo["criteria"] = crit.str();
  for (const auto& [name, value] : c.tolerances) {
    std::ostringstream v;
    v.precision(17);
    v << value;
    echo["tol-" + name] = v.str();
  }
  echo["workers"] = std::to_string(c.workers);
  echo["seed"] = std::to_string(c.seed);
  return echo;
}

}  // namespace

ResidualReport run_verify(const RunConfig& config) {
  return run_verify(config, build_catalog_immersion(config));
}

ResidualReport run_verify(const RunConfig& config, const ImmersionSpec& spec) {
  config.validate();
  RunConfig cfg = config;
  if (cfg.criteria.empty() && !cfg.immersion.empty())
    cfg.criteria = catalog_entry(cfg.immersion).default_criteria;
  if (cfg.grid.empty()) cfg.grid = spec.domain.default_counts();
  if (static_cast<int>(cfg.grid.size()) != spec.map.chart_dim) {
    if (cfg.grid.size() == 1)
      cfg.grid.assign(spec.map.chart_dim, cfg.grid[0]);
    else
      throw std::invalid_argument("grid spec does not match the chart dimension");
  }
  cfg.validate();

  ResidualReport report;
  report.config_echo = echo_config(cfg);
  report.engine_version = kEngineVersion;
  report.timestamp = iso_timestamp();

  const auto points = spec.domain.grid(cfg.grid);
  report.points.resize(points.size());

  const int workers =
      cfg.workers > 0 ? cfg.workers
                      : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<size_t> next{0};
  std::vector<std::string> errors(points.size());
  auto work = [&]() {
    for (size_t idx = next.fetch_add(1); idx < points.size(); idx = next.fetch_add(1)) {
      try {
        report.points[idx] = evaluate_point(spec, cfg.criteria, points[idx]);
      } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "engine failure at point (";
        for (size_t a = 0; a < points[idx].size(); ++a)
          msg << (a ? ", " : "") << points[idx][a];
        msg << "): " << e.what();
        errors[idx] = msg.str();
      }
    }
  };
  if (workers == 1 || points.size() <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& err : errors)
    if (!err.empty()) throw std::runtime_error(err);

  if (report.points.empty()) {
    for (const auto& name : cfg.criteria) report.verdicts[name] = "no-points";
    report.verdicts["overall"] = "no-points";
    report.pass = false;
    return report;
  }

  // gauge-invariance spot checks (deterministic in the seed)
  {
    std::mt19937_64 rng(cfg.seed);
    const int checks = std::min<size_t>(cfg.gauge_checks, report.points.size());
    double spread = 0.0;
    for (int k = 0; k < checks; ++k) {
      const size_t idx = checks > 1 ? k * (report.points.size() - 1) / (checks - 1) : 0;
      spread = std::max(
          spread, gauge_consistency_spread(spec, points[idx], report.points[idx], rng));
    }
    for (auto& p : report.points) p.defects["gauge_spread"] = spread;
  }

  // ordered reduction: aggregates over the fixed grid order
  auto accumulate = [&](const std::string& name, double value) {
    auto [it, inserted] = report.aggregate_max.emplace(name, value);
    if (!inserted) it->second = std::max(it->second, value);
    report.aggregate_mean[name] += value / static_cast<double>(report.points.size());
  };
  std::map<std::string, bool> any_applicable;
  for (const auto& p : report.points) {
    for (const auto& [name, value] : p.defects) accumulate("defect." + name, value);
    for (const auto& [name, c] : p.criteria) {
      if (!c.applicable) continue;
      any_applicable[name] = true;
      accumulate(name + ".tangential_abs", c.tangential_abs);
      accumulate(name + ".normal_abs", c.normal_abs);
      accumulate(name + ".tangential_rel", c.tangential_rel);
      accumulate(name + ".normal_rel", c.normal_rel);
    }
  }

  // structure verdict: geometric invariants within their tolerances
  const double tol_geom = cfg.tol("geometry");
  const double tol_codazzi =
      cfg.tolerances.count("codazzi") ? cfg.tolerances.at("codazzi") : 1e-7;
  const double tol_consistency =
      cfg.tolerances.count("consistency") ? cfg.tolerances.at("consistency") : 1e-6;
  auto agg = [&](const std::string& name) {
    auto it = report.aggregate_max.find(name);
    return it == report.aggregate_max.end() ? 0.0 : it->second;
  };
  bool structure_ok = agg("defect.lagrangian") <= tol_geom &&
                      agg("defect.frame_orthonormality") <= tol_geom &&
                      agg("defect.b_symmetry") <= tol_geom &&
                      agg("defect.shape_duality") <= tol_geom &&
                      agg("defect.gauge_spread") <= tol_geom &&
                      agg("defect.codazzi") <= tol_codazzi &&
                      agg("defect.tension_mismatch") <= tol_consistency &&
                      agg("defect.ricci_route_gap") <= tol_consistency;
  if (spec.target.is_lift())
    structure_ok = structure_ok && agg("defect.lift_norm") <= tol_geom &&
                   agg("defect.lift_vertical") <= tol_geom;
  report.verdicts["structure"] = structure_ok ? "pass" : "fail";

  const double tol_crit = cfg.tol("criteria");
  bool all_pass = structure_ok;
  for (const auto& name : cfg.criteria) {
    if (!any_applicable[name]) {
      report.verdicts[name] = "skipped";
      continue;
    }
    const double worst = std::max(agg(name + ".tangential_rel"), agg(name + ".normal_rel"));
    const bool ok = worst <= tol_crit;
    report.verdicts[name] = ok ? "pass" : "fail";
    all_pass = all_pass && ok;
  }

  // closed-form identities for chen-style runs
  if (cfg.immersion == "chen") {
    const double mu = resolve_mu(cfg);
    const auto ids = classification_identities(cfg.m, lambda_from_mu(mu), mu, 1.0);
    double worst = 0.0;
    for (const auto& [name, value] : ids) {
      report.aggregate_max["identities." + name] = value;
      report.aggregate_mean["identities." + name] = value;
      worst = std::max(worst, value);
    }
    const bool ok = worst <= cfg.tol("identities");
    report.verdicts["identities"] = ok ? "pass" : "fail";
    all_pass = all_pass && ok;
  }

  report.pass = all_pass;
  report.verdicts["overall"] = all_pass ? "pass" : "fail";
  return report;
}

std::vector<ScanRow> run_scan(int m_lo, int m_hi, bool full_verify, const RunConfig& base_config) {
  if (m_lo < 2 || m_hi < m_lo) throw std::invalid_argument("scan range needs 2 <= m_lo <= m_hi");
  std::vector<ScanRow> rows;
  for (int m = m_lo; m <= m_hi; ++m) {
    const auto roots = mu_roots(m);
    for (int r = 0; r < 4; ++r) {
      ScanRow row;
      row.m = m;
      row.root_index = r;
      row.mu = roots.roots[r];
      row.lambda = lambda_from_mu(row.mu);
      row.a = (row.lambda + (m - 1) * row.mu) / m;
      const auto ids = classification_identities(m, row.lambda, row.mu, 1.0);
      row.res_516 = ids.at("res_516");
      row.res_53pp = ids.at("res_53pp");
      row.res_lambda = ids.at("res_lambda");
      if (full_verify) {
        RunConfig cfg = base_config;
        cfg.immersion = "chen";
        cfg.m = m;
        cfg.mu_root = r;
        cfg.mu_value.reset();
        cfg.grid.clear();
        row.verdict = run_verify(cfg).pass ? "pass" : "fail";
      } else {
        row.verdict = "skipped";
      }
      rows.push_back(row);
    }
  }
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream out;
  out.precision(17);
  out << "m,root_index,mu,lambda,a,res_516,res_53pp,res_lambda,verdict\n";
  for (const auto& r : rows)
    out << r.m << "," << r.root_index << "," << r.mu << "," << r.lambda << "," << r.a << ","
        << r.res_516 << "," << r.res_53pp << "," << r.res_lambda << "," << r.verdict << "\n";
  return out.str();
}

}  // namespace lagbih
