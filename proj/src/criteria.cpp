#include "lagbih/criteria.hpp"

#include <cmath>
#include <stdexcept>

namespace lagbih {

namespace {

double scale_of(const GeometryContext& ctx) {
  return ctx.chart_dim() * ctx.mean_curvature_norm();
}

}  // namespace

CriterionResidual split_residual(const GeometryContext& ctx) {
  CriterionResidual out;
  out.name = "split";
  out.scale = scale_of(ctx);
  const Vec curv = ctx.curvature_sum();
  const Vec tan = ctx.trace_nabla_shape_H() + ctx.trace_shape_nabla_perp_H() -
                  ctx.tangential_part_value(curv);
  const Vec nor = ctx.delta_perp_H() + ctx.trace_B_shape_H() - ctx.normal_part_value(curv);
  out.tangential_norm = tan.norm();
  out.normal_norm = nor.norm();
  out.per_equation = {{"tangential", out.tangential_norm}, {"normal", out.normal_norm}};
  return out;
}

CriterionResidual kahler_residual(const GeometryContext& ctx) {
  CriterionResidual out;
  out.name = "kahler";
  out.scale = scale_of(ctx);
  if (lagrangian_defect(ctx) > 1e-8) {
    out.applicable = false;
    out.skip_reason = "non-Lagrangian input";
    return out;
  }
  const int m = ctx.chart_dim();
  const Vec h = ctx.mean_curvature();
  const Vec jh = apply_J(h);  // tangent for Lagrangian inputs

  // tangential: trace(nabla A_H) + trace A_{nabla^perp H}
  //   - sum_i < trace_g(nabla^perp_{e_i} B) - trace_g(nabla^perp_. B)(e_i, .), H > e_i
  Vec tan = ctx.trace_nabla_shape_H() + ctx.trace_shape_nabla_perp_H();
  for (int i = 0; i < m; ++i) {
    Vec t1 = Vec::Zero(ctx.embedding_dim());
    Vec t2 = Vec::Zero(ctx.embedding_dim());
    for (int j = 0; j < m; ++j) {
      t1 += ctx.nabla_perp_B(i, j, j);
      t2 += ctx.nabla_perp_B(j, i, j);
    }
    tan -= (t1 - t2).dot(h) * ctx.frame_vector(i);
  }

  // normal: Delta^perp H + trace B(A_H ., .) + sum Ric^N(JH,e_i) Je_i
  //   - sum Ric(JH,e_i) Je_i - J trace A_{B(JH,.)} + m J A_H(JH)
  Vec nor = ctx.delta_perp_H() + ctx.trace_B_shape_H();
  const Vec p = ctx.position();
  const Eigen::MatrixXd ric = ctx.intrinsic_ricci();
  Eigen::VectorXd jh_frame(m);
  for (int i = 0; i < m; ++i) jh_frame[i] = jh.dot(ctx.frame_vector(i));
  for (int i = 0; i < m; ++i) {
    const Vec jei = apply_J(ctx.frame_vector(i));
    nor += ambient_ricci(ctx.model(), p, jh, ctx.frame_vector(i)) * jei;
    double ric_jh_ei = 0.0;
    for (int k = 0; k < m; ++k) ric_jh_ei += jh_frame[k] * ric(k, i);
    nor -= ric_jh_ei * jei;
  }
  // J trace A_{B(JH,.)}: B(JH, e_i) = sum_k <JH,e_k> B(e_k, e_i)
  Vec trace_a = Vec::Zero(ctx.embedding_dim());
  for (int i = 0; i < m; ++i) {
    Vec b_jh_ei = Vec::Zero(ctx.embedding_dim());
    for (int k = 0; k < m; ++k) b_jh_ei += jh_frame[k] * ctx.second_fundamental(k, i);
    for (int j = 0; j < m; ++j)
      trace_a += ctx.second_fundamental(i, j).dot(b_jh_ei) * ctx.frame_vector(j);
  }
  nor -= apply_J(trace_a);
  // m J A_H(JH)
  Vec ah_jh = Vec::Zero(ctx.embedding_dim());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      ah_jh += jh_frame[i] * ctx.second_fundamental(i, j).dot(h) * ctx.frame_vector(j);
  nor += m * apply_J(ah_jh);

  out.tangential_norm = tan.norm();
  out.normal_norm = nor.norm();
  out.per_equation = {{"tangential", out.tangential_norm}, {"normal", out.normal_norm}};
  return out;
}

CriterionResidual spaceform_residual(const GeometryContext& ctx) {
  CriterionResidual out;
  out.name = "spaceform";
  out.scale = scale_of(ctx);
  const int m = ctx.chart_dim();
  const double eps = ctx.model().epsilon();
  const Vec tan = ctx.trace_nabla_shape_H() + ctx.trace_shape_nabla_perp_H();
  const Vec nor =
      ctx.delta_perp_H() + ctx.trace_B_shape_H() - (m + 3.0) * eps * ctx.mean_curvature();
  out.tangential_norm = tan.norm();
  out.normal_norm = nor.norm();
  out.per_equation = {{"tangential", out.tangential_norm}, {"normal", out.normal_norm}};
  return out;
}

CriterionResidual humbilical_residual(const GeometryContext& ctx) {
  CriterionResidual out;
  out.name = "humbilical";
  out.scale = scale_of(ctx);
  const int m = ctx.chart_dim();
  if (m < 2) {
    out.applicable = false;
    out.skip_reason = "needs m >= 2";
    return out;
  }
  const auto fit = humbilical_fit(ctx);
  if (!fit.defined) {
    out.applicable = false;
    out.skip_reason = "adapted frame undefined (H = 0 with B != 0)";
    return out;
  }
  if (fit.minimal_point) {
    // totally geodesic: every term carries a factor of a or its derivatives
    out.per_equation = {{"eq1", 0.0}, {"eq2", 0.0}, {"eq53", 0.0}, {"eq54", 0.0}};
    return out;
  }
  if (fit.fit_residual > 1e-6) {
    out.applicable = false;
    out.skip_reason = "H-umbilical fit residual above 1e-6";
    return out;
  }

  const auto q = humbilical_jets(ctx);
  const double lambda = q.lambda.value(), mu = q.mu.value(), a = q.a.value();
  const double eps = ctx.model().epsilon();
  const Jet e1a = ctx.directional_scalar(q.a, 0);
  const double e1l = ctx.directional_scalar(q.lambda, 0).value();

  double sum_omega = 0.0;
  for (int l = 1; l < m; ++l) sum_omega += ctx.omega(l, 0, l);
  const double eq1 = 2.0 * lambda * e1a.value() + a * e1l + lambda * a * sum_omega;

  std::vector<double> eja(m);
  eja[0] = e1a.value();
  for (int j = 1; j < m; ++j) eja[j] = ctx.directional_scalar(q.a, j).value();
  double eq2_max = 0.0, eq2_sq = 0.0;
  for (int j = 1; j < m; ++j) {
    const double eq = 2.0 * mu * eja[j] + a * lambda * ctx.omega(j, 0, 0);
    eq2_max = std::max(eq2_max, std::abs(eq));
    eq2_sq += eq * eq;
  }

  // (5.3): -sum e_i(e_i a) + a sum w^j_1(e_i)^2 + sum (e_j a) w^j_i(e_i)
  //        + a (lambda^2 + (m-1) mu^2 - eps (m+3))
  double eq53 = a * (lambda * lambda + (m - 1.0) * mu * mu - eps * (m + 3.0));
  for (int i = 0; i < m; ++i) {
    const Jet eia = ctx.directional_scalar(q.a, i);
    eq53 -= ctx.directional_scalar(eia, i).value();
    for (int j = 0; j < m; ++j) {
      eq53 += a * ctx.omega(j, 0, i) * ctx.omega(j, 0, i);
      eq53 += eja[j] * ctx.omega(j, i, i);
    }
  }

  // (5.4), one equation per j > 1
  double eq54_max = 0.0, eq54_sq = 0.0;
  for (int j = 1; j < m; ++j) {
    double eq = 0.0;
    for (int i = 0; i < m; ++i) {
      eq -= 2.0 * eja[i] * ctx.omega(j, 0, i);
      eq -= a * ctx.directional_scalar(ctx.omega_jet(j, 0, i), i).value();
      for (int l = 0; l < m; ++l) {
        eq -= a * ctx.omega(l, 0, i) * ctx.omega(j, l, i);
        eq += a * ctx.omega(l, i, i) * ctx.omega(j, 0, l);
      }
    }
    eq54_max = std::max(eq54_max, std::abs(eq));
    eq54_sq += eq * eq;
  }

  out.tangential_norm = std::sqrt(eq1 * eq1 + eq2_sq);
  out.normal_norm = std::sqrt(eq53 * eq53 + eq54_sq);
  out.per_equation = {{"eq1", std::abs(eq1)},
                      {"eq2", eq2_max},
                      {"eq53", std::abs(eq53)},
                      {"eq54", eq54_max}};
  return out;
}

CriterionResidual reduced_residual(const GeometryContext& ctx) {
  CriterionResidual out;
  out.name = "reduced";
  out.scale = scale_of(ctx);
  const int m = ctx.chart_dim();
  if (m < 2) {
    out.applicable = false;
    out.skip_reason = "needs m >= 2";
    return out;
  }
  const auto fit = humbilical_fit(ctx);
  if (!fit.defined || fit.minimal_point) {
    out.applicable = false;
    out.skip_reason = "adapted frame undefined or minimal point";
    return out;
  }
  if (std::abs(fit.mu) < 1e-8) {
    out.applicable = false;
    out.skip_reason = "mu below 1e-8: reduction inapplicable";
    return out;
  }
  if (fit.k_spread > 1e-7) {
    out.applicable = false;
    out.skip_reason = "k ill-defined: spread above 1e-7";
    return out;
  }

  const auto q = humbilical_jets(ctx);
  const double lambda = q.lambda.value(), mu = q.mu.value(), a = q.a.value(), k = q.k.value();
  const double eps = ctx.model().epsilon();
  const Jet e1a = ctx.directional_scalar(q.a, 0);
  const double e1l = ctx.directional_scalar(q.lambda, 0).value();

  const double eq1 = 2.0 * lambda * e1a.value() + a * e1l + a * lambda * (m - 1.0) * k;
  double eq2_max = 0.0, eq2_sq = 0.0, eq54_max = 0.0, eq54_sq = 0.0;
  for (int j = 1; j < m; ++j) {
    const double eja = ctx.directional_scalar(q.a, j).value();
    eq2_max = std::max(eq2_max, std::abs(eja));
    eq2_sq += eja * eja;
    const double ejk = ctx.directional_scalar(q.k, j).value();
    eq54_max = std::max(eq54_max, std::abs(ejk));
    eq54_sq += ejk * ejk;
  }
  const double eq53 = -ctx.directional_scalar(e1a, 0).value() + a * (m - 1.0) * k * k -
                      e1a.value() * (m - 1.0) * k +
                      a * (lambda * lambda + (m - 1.0) * mu * mu - eps * (m + 3.0));

  out.tangential_norm = std::sqrt(eq1 * eq1 + eq2_sq);
  out.normal_norm = std::sqrt(eq53 * eq53 + eq54_sq);
  out.per_equation = {{"eq1p", std::abs(eq1)},
                      {"eq2p", eq2_max},
                      {"eq53p", std::abs(eq53)},
                      {"eq54p", eq54_max}};
  return out;
}

std::map<std::string, double> classification_identities(int m, double lambda, double mu,
                                                        double epsilon) {
  const long double l = lambda, u = mu, e = epsilon;
  std::map<std::string, double> out;
  out["res_516"] = static_cast<double>(fabsl(u * u - l * u - e));
  out["res_53pp"] = static_cast<double>(fabsl(l * l + (m - 1.0L) * u * u - e * (m + 3.0L)));
  if (epsilon == 1.0) {
    if (mu == 0.0) throw std::invalid_argument("classification_identities: mu must be nonzero");
    out["res_lambda"] = static_cast<double>(fabsl(l - (u * u - 1.0L) / u));
  }
  return out;
}

}  // namespace lagbih
