#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <utility>

#include "lagbih/immersion.hpp"
#include "lagbih/jet_vec.hpp"

namespace lagbih {

struct FrameOptions {
  // e_1 := -J(H)/|H| whenever H != 0, so that J e_1 is parallel to H and
  // a = <H, J e_1> comes out positive.
  bool adapt_to_mean_curvature = true;
  // Optional invertible premix of the coordinate candidates before
  // Gram-Schmidt; used to re-gauge the completion e_2..e_m in tests.
  std::optional<Eigen::MatrixXd> gauge;
};

// Test hook: constant perturbation of one second-fundamental-form entry,
// B(e_i, e_j) += delta * J e_k (symmetrized).
struct BFault {
  int i = 0, j = 0;
  int normal_index = 0;
  double delta = 0.0;
};

// Full second-order submanifold calculus along an immersion at one chart
// point. Everything is evaluated in truncated jet arithmetic so frames,
// B, H and the connection forms are themselves differentiable fields; the
// order budget (4 on the immersion) is exactly what the bitension needs.
//
// For ProjectiveViaLift targets the computation runs on the Legendrian
// lift: the ambient covariant derivative is the horizontal projection of
// the flat derivative of C^{m+1}, and B is the horizontal part of the
// sphere second fundamental form.
class GeometryContext {
public:
  GeometryContext(const ImmersionSpec& imm, std::span<const double> point,
                  FrameOptions options = {});

  int chart_dim() const { return m_; }
  int embedding_dim() const { return D_; }
  const AmbientModel& model() const { return model_; }
  const std::vector<double>& point() const { return point_; }

  // double-level extraction
  Eigen::MatrixXd metric() const;
  Vec position() const;
  Vec tangent(int k) const;
  Vec frame_vector(int i) const;
  Vec mean_curvature() const;
  double mean_curvature_norm() const { return mean_curvature().norm(); }
  Vec second_fundamental(int i, int j) const;
  Eigen::MatrixXd shape_operator(const Vec& xi) const;
  double omega(int l, int j, int i) const;  // w^l_j(e_i): <nabla_{e_i} e_j, e_l>

  double frame_orthonormality_defect() const;
  double b_symmetry_defect() const;
  double shape_duality_defect() const;   // Weingarten route vs <B, xi> route
  double lift_vertical_defect() const { return lift_vertical_defect_; }
  double lift_norm_defect() const { return lift_norm_defect_; }

  // tension via m*H and via the trace of the second fundamental form of the
  // map; throws if the two disagree beyond 1e-8.
  std::pair<Vec, Vec> tension_two_routes() const;
  Vec tension() const;

  // bitension pieces (all ambient vectors at the point)
  Vec delta_perp_H() const;
  Vec trace_B_shape_H() const;            // trace_g B(A_H(.), .)
  Vec trace_nabla_shape_H() const;        // trace_g (nabla A_H)
  Vec trace_shape_nabla_perp_H() const;   // trace_g A_{nabla^perp H}(.)
  Vec curvature_sum() const;              // sum_i R^N(H, e_i) e_i
  Vec bitension() const;

  // normal Laplacian of an arbitrary jet-evaluable normal field
  Vec normal_laplacian(std::span<const Jet> field) const;

  // intrinsic Ricci in the orthonormal frame, two routes
  Eigen::MatrixXd intrinsic_ricci() const;                  // Gauss equation
  Eigen::MatrixXd intrinsic_ricci_via_metric_jets() const;  // Christoffel route
  double codazzi_residual() const { return codazzi_residual(std::nullopt); }
  double codazzi_residual(const std::optional<BFault>& fault) const;
  Vec nabla_perp_B(int a, int b, int c) const;  // (nabla^perp_{e_a} B)(e_b, e_c)

  // jet-level access for the structure / criteria layers
  const JetVec& position_jet() const { return f_; }
  const JetVec& frame_jet(int i) const { return frame_amb_[i]; }
  const Jet& frame_chart_coeff(int i, int k) const { return frame_chart_[i][k]; }
  const JetVec& mean_curvature_jet() const { return H_; }
  const JetVec& b_jet(int i, int j) const { return B_[i][j]; }
  const Jet& omega_jet(int l, int j, int i) const;
  Jet directional_scalar(const Jet& scalar, int frame_i) const;  // e_i(scalar)

  JetVec ambient_cov_derivative(std::span<const Jet> field, int frame_i) const;
  JetVec tangential_part(std::span<const Jet> field) const;
  JetVec normal_part(std::span<const Jet> field) const;
  JetVec normal_cov_derivative(std::span<const Jet> field, int frame_i) const;
  Vec tangential_part_value(const Vec& w) const;
  Vec normal_part_value(const Vec& w) const;

  Vec value_of(std::span<const Jet> v) const;

private:
  void build_frame(const FrameOptions& options);
  void build_adapted_b();
  void build_omegas();
  const std::vector<JetVec>& nabla_perp_H_fields() const;
  double codazzi_with_b(const std::vector<std::vector<JetVec>>& b) const;

  AmbientModel model_;
  int m_ = 0, D_ = 0;
  std::vector<double> point_;
  std::shared_ptr<const JetTable> table_;

  JetVec f_;                                // order 4
  std::vector<JetVec> dphi_;                // m x D, order 3
  std::vector<std::vector<Jet>> g_;         // m x m, order 3
  std::vector<std::vector<Jet>> ginv_;      // m x m, order 3
  std::vector<std::vector<JetVec>> Bc_;     // coordinate B, order 2
  JetVec H_;                                // order 2
  std::vector<std::vector<Jet>> frame_chart_;  // m x m, order 2
  std::vector<JetVec> frame_amb_;              // m x D, order 2
  std::vector<std::vector<JetVec>> B_;         // adapted-frame B, order 2
  std::vector<Jet> omega_;                     // m^3, order 1; index (l*m + j)*m + i

  double lift_vertical_defect_ = 0.0;
  double lift_norm_defect_ = 0.0;

  // cached double-level extractions (hot in the criteria loops)
  Vec position_value_;
  Vec h_value_;
  std::vector<Vec> frame_values_;
  std::vector<std::vector<Vec>> b_values_;

  mutable std::optional<std::vector<JetVec>> nabla_perp_H_cache_;
};

// Spec-surface helpers built on GeometryContext.
Eigen::MatrixXd induced_metric(const ImmersionSpec& imm, std::span<const double> p);

}  // namespace lagbih
