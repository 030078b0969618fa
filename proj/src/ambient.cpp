#include "lagbih/ambient.hpp"

#include <cmath>
#include <stdexcept>

namespace lagbih {

Vec apply_J(const Vec& u) {
  Vec out(u.size());
  for (int k = 0; k + 1 < u.size(); k += 2) {
    out[k] = -u[k + 1];
    out[k + 1] = u[k];
  }
  return out;
}

Vec horizontal_project(const Vec& p, const Vec& u) {
  if (std::abs(p.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("horizontal_project: base point is not unit");
  const Vec ip = apply_J(p);
  return u - u.dot(p) * p - u.dot(ip) * ip;
}

Vec complex_structure_apply(const AmbientModel& model, const Vec& p, const Vec& u) {
  if (u.size() != model.embedding_dimension())
    throw std::invalid_argument("vector dimension does not match the model");
  if (model.is_lift()) {
    const Vec ip = apply_J(p);
    const double defect = std::max(std::abs(u.dot(p)), std::abs(u.dot(ip)));
    if (defect > 1e-8 * std::max(1.0, u.norm()))
      throw std::invalid_argument("complex_structure_apply: input is not horizontal at p");
  }
  return apply_J(u);
}

Vec curvature_operator(const AmbientModel& model, const Vec& p, const Vec& u, const Vec& v,
                       const Vec& w) {
  const double eps = model.epsilon();
  if (eps == 0.0) return Vec::Zero(u.size());
  (void)p;  // the space-form formula is position independent on horizontal data
  const Vec ju = apply_J(u), jv = apply_J(v), jw = apply_J(w);
  return eps * (v.dot(w) * u - u.dot(w) * v + w.dot(jv) * ju - w.dot(ju) * jv +
                2.0 * u.dot(jv) * jw);
}

std::vector<Vec> tangent_basis(const AmbientModel& model, const Vec& p) {
  const int dim = model.embedding_dimension();
  std::vector<Vec> basis;
  basis.reserve(model.real_dimension());
  if (!model.is_lift()) {
    for (int k = 0; k < dim; ++k) basis.push_back(Vec::Unit(dim, k));
    return basis;
  }
  // Gram-Schmidt of the horizontal projections of the coordinate axes.
  for (int k = 0; k < dim && static_cast<int>(basis.size()) < model.real_dimension(); ++k) {
    Vec w = horizontal_project(p, Vec::Unit(dim, k));
    for (const Vec& e : basis) w -= w.dot(e) * e;
    const double n = w.norm();
    if (n < 1e-6) continue;
    basis.push_back(w / n);
  }
  if (static_cast<int>(basis.size()) != model.real_dimension())
    throw std::runtime_error("tangent_basis: failed to complete a horizontal basis");
  return basis;
}

double ambient_ricci(const AmbientModel& model, const Vec& p, const Vec& u, const Vec& v) {
  if (model.epsilon() == 0.0) return 0.0;
  double acc = 0.0;
  for (const Vec& f : tangent_basis(model, p)) acc += curvature_operator(model, p, u, f, f).dot(v);
  return acc;
}

}  // namespace lagbih
