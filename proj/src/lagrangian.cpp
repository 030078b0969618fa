#include "lagbih/lagrangian.hpp"

#include <cmath>
#include <stdexcept>

namespace lagbih {

double lagrangian_defect(const GeometryContext& ctx) {
  const int m = ctx.chart_dim();
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    const Vec je = apply_J(ctx.frame_vector(i));
    for (int j = 0; j < m; ++j) worst = std::max(worst, std::abs(je.dot(ctx.frame_vector(j))));
  }
  if (ctx.model().is_lift()) {
    const Vec ip = apply_J(ctx.position());
    for (int i = 0; i < m; ++i)
      worst = std::max(worst, std::abs(ip.dot(ctx.frame_vector(i))));
  }
  return worst;
}

HUmbilicalFit humbilical_fit(const GeometryContext& ctx) {
  const int m = ctx.chart_dim();
  HUmbilicalFit fit;

  double bnorm = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) bnorm = std::max(bnorm, ctx.second_fundamental(i, j).norm());

  if (ctx.mean_curvature_norm() < 1e-10) {
    if (bnorm < 1e-10) {
      fit.defined = true;
      fit.minimal_point = true;  // totally geodesic: lambda = mu = 0 fits exactly
      return fit;
    }
    fit.minimal_point = true;  // H = 0 with B != 0: adapted frame undefined
    return fit;
  }

  fit.defined = true;
  const Vec je1 = apply_J(ctx.frame_vector(0));
  fit.lambda = ctx.second_fundamental(0, 0).dot(je1);
  if (m >= 2) {
    double acc = 0.0;
    for (int i = 1; i < m; ++i) acc += ctx.second_fundamental(i, i).dot(je1);
    fit.mu = acc / (m - 1);
  }
  fit.a = (fit.lambda + (m - 1) * fit.mu) / m;

  double worst = (ctx.second_fundamental(0, 0) - fit.lambda * je1).norm();
  for (int i = 1; i < m; ++i) {
    worst = std::max(worst, (ctx.second_fundamental(i, i) - fit.mu * je1).norm());
    const Vec jei = apply_J(ctx.frame_vector(i));
    worst = std::max(worst, (ctx.second_fundamental(0, i) - fit.mu * jei).norm());
    for (int j = i + 1; j < m; ++j)
      worst = std::max(worst, ctx.second_fundamental(i, j).norm());
  }
  fit.fit_residual = worst;

  if (m >= 2) {
    double acc = 0.0;
    for (int l = 1; l < m; ++l) acc += ctx.omega(l, 0, l);
    fit.k = acc / (m - 1);
    for (int l = 1; l < m; ++l)
      fit.k_spread = std::max(fit.k_spread, std::abs(ctx.omega(l, 0, l) - fit.k));
  }
  return fit;
}

std::optional<double> pnmc_defect(const GeometryContext& ctx) {
  if (ctx.mean_curvature_norm() < 1e-10) return std::nullopt;
  const JetVec& h = ctx.mean_curvature_jet();
  const Jet inv_norm = reciprocal(sqrt(dot(h, h)));
  JetVec unit = inv_norm * h;
  double worst = 0.0;
  for (int i = 0; i < ctx.chart_dim(); ++i)
    worst = std::max(worst, ctx.value_of(ctx.normal_cov_derivative(unit, i)).norm());
  return worst;
}

HUmbilicalJets humbilical_jets(const GeometryContext& ctx) {
  const int m = ctx.chart_dim();
  if (m < 2) throw std::invalid_argument("humbilical_jets: needs m >= 2");
  const JetVec je1 = apply_complex_structure(ctx.frame_jet(0));
  HUmbilicalJets out;
  out.lambda = dot(ctx.b_jet(0, 0), je1);
  out.mu = dot(ctx.b_jet(1, 1), je1);
  for (int i = 2; i < m; ++i) out.mu += dot(ctx.b_jet(i, i), je1);
  out.mu *= 1.0 / (m - 1);
  out.a = (out.lambda + (m - 1.0) * out.mu) * (1.0 / m);
  out.k = ctx.omega_jet(1, 0, 1);
  for (int l = 2; l < m; ++l) out.k += ctx.omega_jet(l, 0, l);
  out.k *= 1.0 / (m - 1);
  return out;
}

std::map<std::string, double> lem2_residuals(const GeometryContext& ctx) {
  const int m = ctx.chart_dim();
  if (m < 2) throw std::invalid_argument("lem2_residuals: needs m >= 2");
  const auto q = humbilical_jets(ctx);
  const double lambda = q.lambda.value(), mu = q.mu.value();

  double r42 = 0.0, r43 = 0.0, r44 = 0.0, r45 = 0.0, r46 = 0.0, r47 = 0.0, r48 = 0.0;
  const double e1mu = ctx.directional_scalar(q.mu, 0).value();
  for (int j = 1; j < m; ++j) {
    const double ejl = ctx.directional_scalar(q.lambda, j).value();
    // w^1_j(e_1) = -w^j_1(e_1)
    r42 = std::max(r42, std::abs(ejl - (2.0 * mu - lambda) * (-ctx.omega(j, 0, 0))));
    r43 = std::max(r43, std::abs(e1mu - (lambda - 2.0 * mu) * ctx.omega(j, 0, j)));
    r45 = std::max(r45, std::abs(ctx.directional_scalar(q.mu, j).value()));
    r46 = std::max(r46, std::abs(mu * ctx.omega(j, 0, 0)));
    for (int i = 1; i < m; ++i) {
      if (i == j) continue;
      r44 = std::max(r44, std::abs((lambda - 2.0 * mu) * ctx.omega(i, 0, j)));
      r48 = std::max(r48, std::abs(mu * ctx.omega(i, 0, j)));
    }
    for (int i = j + 1; i < m; ++i)
      r47 = std::max(r47, std::abs(mu * (ctx.omega(j, 0, j) - ctx.omega(i, 0, i))));
  }
  return {{"4.2", r42}, {"4.3", r43}, {"4.4", r44}, {"4.5", r45},
          {"4.6", r46}, {"4.7", r47}, {"4.8", r48}};
}

}  // namespace lagbih
