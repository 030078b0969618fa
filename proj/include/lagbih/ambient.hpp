#pragma once

#include <Eigen/Core>
#include <vector>

namespace lagbih {

using Vec = Eigen::VectorXd;

// Ambient complex space form N^m(4*eps): flat C^m (eps = 0) or CP^m(4)
// (eps = 1) represented through its unit-sphere Legendrian lift in C^{m+1}.
// All vectors live in the real embedding coordinates (Re z1, Im z1, ...);
// the inner product is the Euclidean one, i.e. the real part of the
// Hermitian product.
struct AmbientModel {
  enum class Kind { Flat, ProjectiveViaLift };

  Kind kind = Kind::Flat;
  int m = 1;

  static AmbientModel flat(int m) { return {Kind::Flat, m}; }
  static AmbientModel projective_lift(int m) { return {Kind::ProjectiveViaLift, m}; }

  bool is_lift() const { return kind == Kind::ProjectiveViaLift; }
  double epsilon() const { return is_lift() ? 1.0 : 0.0; }
  int real_dimension() const { return 2 * m; }
  int embedding_dimension() const { return is_lift() ? 2 * m + 2 : 2 * m; }
};

// Multiplication by i in embedding coordinates.
Vec apply_J(const Vec& u);

// Removes the components of u along p and ip. Requires |p| = 1 to 1e-8.
Vec horizontal_project(const Vec& p, const Vec& u);

// J on the model's tangent space at p. For the lift the input must be
// horizontal at p (defect beyond 1e-8 throws).
Vec complex_structure_apply(const AmbientModel& model, const Vec& p, const Vec& u);

// R^N(U,V)W = eps{<V,W>U - <U,W>V + <W,JV>JU - <W,JU>JV + 2<U,JV>JW}.
Vec curvature_operator(const AmbientModel& model, const Vec& p, const Vec& u, const Vec& v,
                       const Vec& w);

// Deterministic orthonormal basis of the real 2m-dimensional tangent space
// at p (for the lift: the horizontal space).
std::vector<Vec> tangent_basis(const AmbientModel& model, const Vec& p);

// Ric^N(U,V) by tracing the curvature operator over tangent_basis; equals
// 2(m+1)*eps*<U,V> on the space form.
double ambient_ricci(const AmbientModel& model, const Vec& p, const Vec& u, const Vec& v);

}  // namespace lagbih
