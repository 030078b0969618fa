#include "lagbih/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace lagbih {

namespace {

// Gauss-Jordan inversion in the jet ring; pivots by value magnitude.
// Returns the determinant value alongside the inverse.
std::pair<std::vector<std::vector<Jet>>, double> invert_jet_matrix(
    std::vector<std::vector<Jet>> a, std::shared_ptr<const JetTable> table, int order) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<Jet>> inv(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      inv[i].push_back(Jet::constant(table, i == j ? 1.0 : 0.0, order));

  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col].value()) > std::abs(a[pivot][col].value())) pivot = r;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      std::swap(inv[pivot], inv[col]);
      det = -det;
    }
    det *= a[col][col].value();
    const Jet scale = reciprocal(a[col][col]);
    for (int j = 0; j < n; ++j) {
      a[col][j] = a[col][j] * scale;
      inv[col][j] = inv[col][j] * scale;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Jet factor = a[r][col];
      if (factor.value() == 0.0) {
        bool all_zero = true;
        for (int k = 0; k < table->size(factor.order()); ++k)
          if (factor.coeff(k) != 0.0) { all_zero = false; break; }
        if (all_zero) continue;
      }
      for (int j = 0; j < n; ++j) {
        a[r][j] -= factor * a[col][j];
        inv[r][j] -= factor * inv[col][j];
      }
    }
  }
  return {std::move(inv), det};
}

}  // namespace

GeometryContext::GeometryContext(const ImmersionSpec& imm, std::span<const double> point,
                                 FrameOptions options)
    : model_(imm.target),
      m_(imm.map.chart_dim),
      D_(imm.map.target_dim),
      point_(point.begin(), point.end()) {
  if (D_ != model_.embedding_dimension())
    throw std::invalid_argument("immersion target dimension does not match the ambient model");
  table_ = JetTable::get(m_);

  f_ = imm.map.at(point, kMaxJetOrder);
  if (model_.is_lift()) {
    double n2 = 0.0;
    for (const Jet& c : f_) n2 += c.value() * c.value();
    lift_norm_defect_ = std::abs(std::sqrt(n2) - 1.0);
    if (lift_norm_defect_ > 1e-10)
      throw std::domain_error("lift immersion does not land on the unit sphere at this point");
  }

  dphi_.reserve(m_);
  for (int k = 0; k < m_; ++k) dphi_.push_back(component_derivative(f_, k));

  g_.assign(m_, {});
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j)
      g_[i].push_back(j < i ? g_[j][i] : dot(dphi_[i], dphi_[j]));

  auto [ginv, det] = invert_jet_matrix(g_, table_, g_[0][0].order());
  if (std::abs(det) <= 1e-12)
    throw std::domain_error("degenerate differential: det(g) <= 1e-12");
  ginv_ = std::move(ginv);

  // Coordinate second fundamental form. For the lift, Eq. (Leg):
  // B~ = D_X Y + <X,Y> f - tangential part, then horizontally projected.
  Bc_.assign(m_, std::vector<JetVec>(m_));
  const JetVec jf = apply_complex_structure(f_);
  for (int k = 0; k < m_; ++k) {
    for (int l = k; l < m_; ++l) {
      JetVec w = component_derivative(dphi_[k], l);
      if (model_.is_lift()) axpy(w, g_[k][l], f_);
      // subtract the tangential part via the coordinate metric
      std::vector<Jet> s;
      s.reserve(m_);
      for (int q = 0; q < m_; ++q) s.push_back(dot(w, dphi_[q]));
      for (int r = 0; r < m_; ++r) {
        Jet coef = ginv_[r][0] * s[0];
        for (int q = 1; q < m_; ++q) fused_multiply_add(coef, ginv_[r][q], s[q]);
        axpy_neg(w, coef, dphi_[r]);
      }
      if (model_.is_lift()) {
        const Jet vert = dot(w, jf);
        lift_vertical_defect_ = std::max(lift_vertical_defect_, std::abs(vert.value()));
        if (lift_vertical_defect_ > 1e-8)
          throw std::domain_error("non-Legendrian lift: vertical component of B exceeds 1e-8");
        const Jet rad = dot(w, f_);
        axpy_neg(w, rad, f_);
        axpy_neg(w, vert, jf);
      }
      Bc_[k][l] = w;
      if (l != k) Bc_[l][k] = std::move(w);
    }
  }

  H_.assign(D_, Jet::constant(table_, 0.0, Bc_[0][0][0].order()));
  for (int k = 0; k < m_; ++k)
    for (int l = 0; l < m_; ++l) axpy(H_, ginv_[k][l], Bc_[k][l]);
  for (Jet& c : H_) c *= 1.0 / m_;

  build_frame(options);
  build_adapted_b();
  build_omegas();

  position_value_ = value_of(f_);
  h_value_ = value_of(H_);
  frame_values_.reserve(m_);
  for (int i = 0; i < m_; ++i) frame_values_.push_back(value_of(frame_amb_[i]));
  b_values_.assign(m_, std::vector<Vec>(m_));
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) b_values_[i][j] = value_of(B_[i][j]);
}

void GeometryContext::build_frame(const FrameOptions& options) {
  const int order = H_[0].order();
  Eigen::MatrixXd gauge = Eigen::MatrixXd::Identity(m_, m_);
  if (options.gauge) {
    if (options.gauge->rows() != m_ || options.gauge->cols() != m_)
      throw std::invalid_argument("gauge matrix must be m x m");
    gauge = *options.gauge;
  }

  double h2 = 0.0;
  for (const Jet& c : H_) h2 += c.value() * c.value();
  const bool adapt = options.adapt_to_mean_curvature && std::sqrt(h2) > 1e-10;

  if (adapt) {
    JetVec e1 = apply_complex_structure(H_);
    for (Jet& c : e1) c *= -1.0;
    // chart coordinates of e1; also a tangency check (J H must be tangent)
    std::vector<Jet> s;
    for (int q = 0; q < m_; ++q) s.push_back(dot(e1, dphi_[q]));
    std::vector<Jet> coeff;
    for (int r = 0; r < m_; ++r) {
      Jet c = ginv_[r][0] * s[0];
      for (int q = 1; q < m_; ++q) fused_multiply_add(c, ginv_[r][q], s[q]);
      coeff.push_back(c);
    }
    JetVec resynth(D_, Jet::constant(table_, 0.0, order));
    for (int r = 0; r < m_; ++r) axpy(resynth, coeff[r], dphi_[r]);
    double defect = 0.0, scale = 0.0;
    for (int c = 0; c < D_; ++c) {
      defect = std::max(defect, std::abs(resynth[c].value() - e1[c].value()));
      scale = std::max(scale, std::abs(e1[c].value()));
    }
    if (defect > 1e-8 * std::max(1.0, scale))
      throw std::domain_error("J(H) is not tangent: non-Lagrangian input to the adapted frame");
    const Jet inv_norm = reciprocal(sqrt(dot(resynth, resynth)));
    for (Jet& c : resynth) c = c * inv_norm;
    for (Jet& c : coeff) c = c * inv_norm;
    frame_amb_.push_back(std::move(resynth));
    frame_chart_.push_back(std::move(coeff));
  }

  for (int cand = 0; cand < m_ && static_cast<int>(frame_amb_.size()) < m_; ++cand) {
    JetVec w(D_, Jet::constant(table_, 0.0, dphi_[0][0].order()));
    std::vector<Jet> cw;
    for (int l = 0; l < m_; ++l) {
      axpy(w, gauge(cand, l), dphi_[l]);
      cw.push_back(Jet::constant(table_, gauge(cand, l), dphi_[0][0].order()));
    }
    const double cand_norm2 = dot(w, w).value();
    for (size_t b = 0; b < frame_amb_.size(); ++b) {
      const Jet s = dot(w, frame_amb_[b]);
      axpy_neg(w, s, frame_amb_[b]);
      for (int l = 0; l < m_; ++l) fused_multiply_sub(cw[l], s, frame_chart_[b][l]);
    }
    const double n2 = dot(w, w).value();
    if (n2 < 1e-12 * std::max(cand_norm2, 1e-300)) continue;  // linearly dependent candidate
    const Jet inv_norm = reciprocal(sqrt(dot(w, w)));
    for (Jet& c : w) c = c * inv_norm;
    for (Jet& c : cw) c = c * inv_norm;
    frame_amb_.push_back(std::move(w));
    frame_chart_.push_back(std::move(cw));
  }
  if (static_cast<int>(frame_amb_.size()) != m_)
    throw std::domain_error("could not complete an orthonormal frame: rank deficiency");
}

void GeometryContext::build_adapted_b() {
  const int order = Bc_[0][0][0].order();
  // T[i][l] = sum_k c_i^k Bc[k][l], then B[i][j] = sum_l c_j^l T[i][l].
  std::vector<std::vector<JetVec>> t(m_, std::vector<JetVec>(m_));
  for (int i = 0; i < m_; ++i)
    for (int l = 0; l < m_; ++l) {
      JetVec acc(D_, Jet::constant(table_, 0.0, order));
      for (int k = 0; k < m_; ++k) axpy(acc, frame_chart_[i][k], Bc_[k][l]);
      t[i][l] = std::move(acc);
    }
  B_.assign(m_, std::vector<JetVec>(m_));
  for (int i = 0; i < m_; ++i)
    for (int j = i; j < m_; ++j) {
      JetVec acc(D_, Jet::constant(table_, 0.0, order));
      for (int l = 0; l < m_; ++l) axpy(acc, frame_chart_[j][l], t[i][l]);
      B_[i][j] = acc;
      if (j != i) B_[j][i] = std::move(acc);
    }
}

void GeometryContext::build_omegas() {
  omega_.clear();
  omega_.reserve(static_cast<size_t>(m_) * m_ * m_);
  std::vector<JetVec> dframe;  // ambient covariant derivative of e_j along e_i
  dframe.reserve(static_cast<size_t>(m_) * m_);
  for (int j = 0; j < m_; ++j)
    for (int i = 0; i < m_; ++i) dframe.push_back(ambient_cov_derivative(frame_amb_[j], i));
  for (int l = 0; l < m_; ++l)
    for (int j = 0; j < m_; ++j)
      for (int i = 0; i < m_; ++i)
        omega_.push_back(dot(dframe[static_cast<size_t>(j) * m_ + i], frame_amb_[l]));
}

const Jet& GeometryContext::omega_jet(int l, int j, int i) const {
  return omega_[(static_cast<size_t>(l) * m_ + j) * m_ + i];
}

Jet GeometryContext::directional_scalar(const Jet& scalar, int frame_i) const {
  Jet acc = frame_chart_[frame_i][0] * scalar.derivative(0);
  for (int k = 1; k < m_; ++k) acc += frame_chart_[frame_i][k] * scalar.derivative(k);
  return acc;
}

double GeometryContext::omega(int l, int j, int i) const { return omega_jet(l, j, i).value(); }

JetVec GeometryContext::ambient_cov_derivative(std::span<const Jet> field, int frame_i) const {
  if (field[0].order() < 1)
    throw std::domain_error("jet order overflow: the field cannot be differentiated again");
  JetVec out(D_, Jet::constant(table_, 0.0, field[0].order() - 1));
  for (int k = 0; k < m_; ++k) {
    const JetVec dk = component_derivative(field, k);
    axpy(out, frame_chart_[frame_i][k], dk);
  }
  if (model_.is_lift()) {
    const Jet rad = dot(out, f_);
    axpy_neg(out, rad, f_);
    const JetVec jf = apply_complex_structure(f_);
    const Jet vert = dot(out, jf);
    axpy_neg(out, vert, jf);
  }
  return out;
}

JetVec GeometryContext::tangential_part(std::span<const Jet> field) const {
  JetVec out(D_, Jet::constant(table_, 0.0, field[0].order()));
  for (int i = 0; i < m_; ++i) axpy(out, dot(field, frame_amb_[i]), frame_amb_[i]);
  return out;
}

JetVec GeometryContext::normal_part(std::span<const Jet> field) const {
  JetVec out(field.begin(), field.end());
  if (model_.is_lift()) {
    const Jet rad = dot(out, f_);
    axpy_neg(out, rad, f_);
    const JetVec jf = apply_complex_structure(f_);
    const Jet vert = dot(out, jf);
    axpy_neg(out, vert, jf);
  }
  for (int i = 0; i < m_; ++i) {
    const Jet s = dot(out, frame_amb_[i]);
    axpy_neg(out, s, frame_amb_[i]);
  }
  return out;
}

JetVec GeometryContext::normal_cov_derivative(std::span<const Jet> field, int frame_i) const {
  return normal_part(ambient_cov_derivative(field, frame_i));
}

Vec GeometryContext::value_of(std::span<const Jet> v) const {
  Vec out(static_cast<int>(v.size()));
  for (size_t k = 0; k < v.size(); ++k) out[static_cast<int>(k)] = v[k].value();
  return out;
}

Vec GeometryContext::tangential_part_value(const Vec& w) const {
  Vec out = Vec::Zero(D_);
  for (int i = 0; i < m_; ++i) {
    const Vec e = frame_vector(i);
    out += w.dot(e) * e;
  }
  return out;
}

Vec GeometryContext::normal_part_value(const Vec& w) const {
  Vec out = w;
  if (model_.is_lift()) {
    const Vec p = position();
    const Vec ip = apply_J(p);
    out -= out.dot(p) * p;
    out -= out.dot(ip) * ip;
  }
  return out - tangential_part_value(out);
}

Eigen::MatrixXd GeometryContext::metric() const {
  Eigen::MatrixXd g(m_, m_);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) g(i, j) = g_[i][j].value();
  return g;
}

Vec GeometryContext::position() const { return position_value_; }
Vec GeometryContext::tangent(int k) const { return value_of(dphi_[k]); }
Vec GeometryContext::frame_vector(int i) const { return frame_values_[i]; }
Vec GeometryContext::mean_curvature() const { return h_value_; }
Vec GeometryContext::second_fundamental(int i, int j) const { return b_values_[i][j]; }

Eigen::MatrixXd GeometryContext::shape_operator(const Vec& xi) const {
  Eigen::MatrixXd a(m_, m_);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) a(i, j) = second_fundamental(i, j).dot(xi);
  return a;
}

double GeometryContext::frame_orthonormality_defect() const {
  double worst = 0.0;
  for (int i = 0; i < m_; ++i)
    for (int j = i; j < m_; ++j) {
      const double d = frame_vector(i).dot(frame_vector(j)) - (i == j ? 1.0 : 0.0);
      worst = std::max(worst, std::abs(d));
    }
  return worst;
}

double GeometryContext::b_symmetry_defect() const {
  double worst = 0.0;
  for (int i = 0; i < m_; ++i)
    for (int j = i + 1; j < m_; ++j)
      worst = std::max(worst, (second_fundamental(i, j) - second_fundamental(j, i)).norm());
  return worst;
}

double GeometryContext::shape_duality_defect() const {
  // A_H from the Weingarten formula vs the <B(.,.), H> duality.
  const Vec h = mean_curvature();
  double worst = 0.0;
  for (int i = 0; i < m_; ++i) {
    const Vec wein = -value_of(tangential_part(ambient_cov_derivative(H_, i)));
    for (int j = 0; j < m_; ++j) {
      const double via_b = second_fundamental(i, j).dot(h);
      worst = std::max(worst, std::abs(wein.dot(frame_vector(j)) - via_b));
    }
  }
  return worst;
}

std::pair<Vec, Vec> GeometryContext::tension_two_routes() const {
  const Vec route1 = m_ * mean_curvature();
  Vec route2 = Vec::Zero(D_);
  for (int i = 0; i < m_; ++i) {
    route2 += value_of(ambient_cov_derivative(frame_amb_[i], i));
    for (int l = 0; l < m_; ++l) route2 -= omega(l, i, i) * frame_vector(l);
  }
  return {route1, route2};
}

Vec GeometryContext::tension() const {
  auto [a, b] = tension_two_routes();
  if ((a - b).norm() > 1e-8 * std::max(1.0, a.norm()))
    throw std::runtime_error("tension cross-check failed: trace(nabla dphi) != m H");
  return a;
}

const std::vector<JetVec>& GeometryContext::nabla_perp_H_fields() const {
  if (!nabla_perp_H_cache_) {
    std::vector<JetVec> fields;
    fields.reserve(m_);
    for (int i = 0; i < m_; ++i) fields.push_back(normal_cov_derivative(H_, i));
    nabla_perp_H_cache_ = std::move(fields);
  }
  return *nabla_perp_H_cache_;
}

Vec GeometryContext::normal_laplacian(std::span<const Jet> field) const {
  std::vector<JetVec> g1;
  g1.reserve(m_);
  for (int i = 0; i < m_; ++i) g1.push_back(normal_cov_derivative(field, i));
  Vec acc = Vec::Zero(D_);
  for (int i = 0; i < m_; ++i) {
    acc += value_of(normal_cov_derivative(g1[i], i));
    for (int l = 0; l < m_; ++l) acc -= omega(l, i, i) * value_of(g1[l]);
  }
  return -acc;
}

Vec GeometryContext::delta_perp_H() const {
  const auto& g1 = nabla_perp_H_fields();
  Vec acc = Vec::Zero(D_);
  for (int i = 0; i < m_; ++i) {
    acc += value_of(normal_cov_derivative(g1[i], i));
    for (int l = 0; l < m_; ++l) acc -= omega(l, i, i) * value_of(g1[l]);
  }
  return -acc;
}

Vec GeometryContext::trace_B_shape_H() const {
  const Vec h = mean_curvature();
  Vec acc = Vec::Zero(D_);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j)
      acc += second_fundamental(i, j).dot(h) * second_fundamental(j, i);
  return acc;
}

Vec GeometryContext::trace_nabla_shape_H() const {
  // fields P_i = A_H(e_i) = sum_j <B(e_i,e_j), H> e_j
  const int order = std::min(B_[0][0][0].order(), frame_amb_[0][0].order());
  std::vector<JetVec> p;
  p.reserve(m_);
  for (int i = 0; i < m_; ++i) {
    JetVec acc(D_, Jet::constant(table_, 0.0, order));
    for (int j = 0; j < m_; ++j) axpy(acc, dot(B_[i][j], H_), frame_amb_[j]);
    p.push_back(std::move(acc));
  }
  Vec out = Vec::Zero(D_);
  for (int i = 0; i < m_; ++i) {
    out += value_of(tangential_part(ambient_cov_derivative(p[i], i)));
    for (int l = 0; l < m_; ++l) out -= omega(l, i, i) * value_of(p[l]);
  }
  return out;
}

Vec GeometryContext::trace_shape_nabla_perp_H() const {
  const auto& g1 = nabla_perp_H_fields();
  Vec out = Vec::Zero(D_);
  for (int i = 0; i < m_; ++i) {
    const Vec xi = value_of(g1[i]);
    for (int j = 0; j < m_; ++j) out += second_fundamental(i, j).dot(xi) * frame_vector(j);
  }
  return out;
}

Vec GeometryContext::curvature_sum() const {
  const Vec p = position();
  const Vec h = mean_curvature();
  Vec acc = Vec::Zero(D_);
  for (int i = 0; i < m_; ++i) {
    const Vec e = frame_vector(i);
    acc += curvature_operator(model_, p, h, e, e);
  }
  return acc;
}

Vec GeometryContext::bitension() const {
  const Vec rough = trace_nabla_shape_H() + trace_shape_nabla_perp_H() + delta_perp_H() +
                    trace_B_shape_H();
  return m_ * (rough - curvature_sum());
}

Eigen::MatrixXd GeometryContext::intrinsic_ricci() const {
  const Vec p = position();
  Eigen::MatrixXd ric(m_, m_);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) {
      double acc = 0.0;
      for (int k = 0; k < m_; ++k) {
        const Vec rn = curvature_operator(model_, p, frame_vector(i), frame_vector(k),
                                          frame_vector(k));
        acc += rn.dot(frame_vector(j));
        acc -= second_fundamental(k, j).dot(second_fundamental(i, k));
        acc += second_fundamental(i, j).dot(second_fundamental(k, k));
      }
      ric(i, j) = acc;
    }
  return ric;
}

Eigen::MatrixXd GeometryContext::intrinsic_ricci_via_metric_jets() const {
  const int corder = g_[0][0].order() - 1;
  // Christoffel symbols Gamma^k_{ij} from the metric jets.
  std::vector<std::vector<std::vector<Jet>>> gamma(
      m_, std::vector<std::vector<Jet>>(m_, std::vector<Jet>(m_, Jet())));
  for (int i = 0; i < m_; ++i)
    for (int j = i; j < m_; ++j)
      for (int k = 0; k < m_; ++k) {
        Jet acc = Jet::constant(table_, 0.0, corder);
        for (int l = 0; l < m_; ++l) {
          Jet inner = g_[j][l].derivative(i) + g_[i][l].derivative(j) - g_[i][j].derivative(l);
          acc += ginv_[k][l] * inner;
        }
        acc *= 0.5;
        gamma[i][j][k] = acc;
        gamma[j][i][k] = acc;
      }

  // R^l_{kij} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik} + Gamma Gamma terms.
  auto riem = [&](int l, int k, int i, int j) {
    double acc = gamma[j][k][l].derivative(i).value() - gamma[i][k][l].derivative(j).value();
    for (int s = 0; s < m_; ++s) {
      acc += gamma[i][s][l].value() * gamma[j][k][s].value();
      acc -= gamma[j][s][l].value() * gamma[i][k][s].value();
    }
    return acc;
  };

  Eigen::MatrixXd ginv_val(m_, m_), g_val(m_, m_);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) {
      ginv_val(i, j) = ginv_[i][j].value();
      g_val(i, j) = g_[i][j].value();
    }

  // Ric(d_a, d_b) = g^{cd} <R(d_a, d_c) d_d, d_b>
  Eigen::MatrixXd ric_coord = Eigen::MatrixXd::Zero(m_, m_);
  for (int a = 0; a < m_; ++a)
    for (int b = 0; b < m_; ++b) {
      double acc = 0.0;
      for (int c = 0; c < m_; ++c)
        for (int d = 0; d < m_; ++d) {
          double inner = 0.0;
          for (int l = 0; l < m_; ++l) inner += riem(l, d, a, c) * g_val(l, b);
          acc += ginv_val(c, d) * inner;
        }
      ric_coord(a, b) = acc;
    }

  // convert to the orthonormal frame
  Eigen::MatrixXd c(m_, m_);
  for (int i = 0; i < m_; ++i)
    for (int k = 0; k < m_; ++k) c(i, k) = frame_chart_[i][k].value();
  return c * ric_coord * c.transpose();
}

Vec GeometryContext::nabla_perp_B(int a, int b, int c) const {
  Vec out = value_of(normal_cov_derivative(B_[b][c], a));
  for (int l = 0; l < m_; ++l) {
    out -= omega(l, b, a) * second_fundamental(l, c);
    out -= omega(l, c, a) * second_fundamental(b, l);
  }
  return out;
}

double GeometryContext::codazzi_with_b(const std::vector<std::vector<JetVec>>& b) const {
  auto value_b = [&](int i, int j) { return value_of(b[i][j]); };
  auto nabla = [&](int aa, int bb, int cc) {
    Vec out = value_of(normal_cov_derivative(b[bb][cc], aa));
    for (int l = 0; l < m_; ++l) {
      out -= omega(l, bb, aa) * value_b(l, cc);
      out -= omega(l, cc, aa) * value_b(bb, l);
    }
    return out;
  };
  const Vec p = position();
  double worst = 0.0;
  for (int i = 0; i < m_; ++i)
    for (int j = i + 1; j < m_; ++j)
      for (int k = 0; k < m_; ++k) {
        const Vec lhs = normal_part_value(
            curvature_operator(model_, p, frame_vector(i), frame_vector(j), frame_vector(k)));
        const Vec rhs = nabla(i, j, k) - nabla(j, i, k);
        worst = std::max(worst, (lhs - rhs).norm());
      }
  return worst;
}

double GeometryContext::codazzi_residual(const std::optional<BFault>& fault) const {
  if (!fault) return codazzi_with_b(B_);
  std::vector<std::vector<JetVec>> b = B_;
  const JetVec je = apply_complex_structure(frame_amb_[fault->normal_index]);
  axpy(b[fault->i][fault->j], fault->delta, je);
  if (fault->i != fault->j) axpy(b[fault->j][fault->i], fault->delta, je);
  return codazzi_with_b(b);
}

Eigen::MatrixXd induced_metric(const ImmersionSpec& imm, std::span<const double> p) {
  FrameOptions opts;
  opts.adapt_to_mean_curvature = false;
  return GeometryContext(imm, p, opts).metric();
}

}  // namespace lagbih
