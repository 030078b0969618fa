#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "lagbih/ambient.hpp"

using namespace lagbih;

namespace {

Vec random_unit(int dim, std::mt19937& rng) {
  std::normal_distribution<double> gauss;
  Vec v(dim);
  for (int k = 0; k < dim; ++k) v[k] = gauss(rng);
  return v / v.norm();
}

// random horizontal vector at p (lift) or plain vector (flat)
Vec random_tangent(const AmbientModel& model, const Vec& p, std::mt19937& rng) {
  std::normal_distribution<double> gauss;
  Vec v(model.embedding_dimension());
  for (int k = 0; k < v.size(); ++k) v[k] = gauss(rng);
  if (model.is_lift()) v = horizontal_project(p, v);
  return v;
}

}  // namespace

TEST_CASE("J is multiplication by i") {
  const auto model = AmbientModel::flat(1);
  Vec u(2);
  u << 1.0, 0.0;
  const Vec ju = complex_structure_apply(model, Vec::Zero(2), u);
  CHECK(ju[0] == doctest::Approx(0.0));
  CHECK(ju[1] == doctest::Approx(1.0));
}

TEST_CASE("J^2 = -id, isometry, compatibility") {
  std::mt19937 rng(3);
  const auto model = AmbientModel::projective_lift(2);
  const Vec p = random_unit(model.embedding_dimension(), rng);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec u = random_tangent(model, p, rng);
    const Vec ju = complex_structure_apply(model, p, u);
    CHECK((apply_J(ju) + u).norm() < 1e-12 * u.norm());
    CHECK(std::abs(ju.norm() - u.norm()) < 1e-12 * u.norm());
    CHECK(std::abs(ju.dot(u)) < 1e-12 * u.squaredNorm());
  }
}

TEST_CASE("complex_structure_apply rejects non-horizontal input on the lift") {
  std::mt19937 rng(8);
  const auto model = AmbientModel::projective_lift(2);
  const Vec p = random_unit(model.embedding_dimension(), rng);
  CHECK_THROWS_AS((void)complex_structure_apply(model, p, p), std::invalid_argument);
}

TEST_CASE("curvature operator basic values") {
  std::mt19937 rng(11);
  const auto flat = AmbientModel::flat(3);
  const Vec pz = Vec::Zero(flat.embedding_dimension());
  const Vec u = random_tangent(flat, pz, rng), v = random_tangent(flat, pz, rng),
            w = random_tangent(flat, pz, rng);
  CHECK(curvature_operator(flat, pz, u, v, w).norm() == doctest::Approx(0.0));

  const auto proj = AmbientModel::projective_lift(2);
  const Vec p = random_unit(proj.embedding_dimension(), rng);
  const Vec a = random_tangent(proj, p, rng);
  CHECK(curvature_operator(proj, p, a, a, a).norm() < 1e-12);

  // orthonormal u, v with Ju perpendicular to v: R(u,v)v = u
  Vec e1 = random_tangent(proj, p, rng);
  e1 /= e1.norm();
  Vec e2 = random_tangent(proj, p, rng);
  e2 -= e2.dot(e1) * e1;
  e2 -= e2.dot(apply_J(e1)) * apply_J(e1);
  e2 /= e2.norm();
  const Vec r = curvature_operator(proj, p, e1, e2, e2);
  CHECK((r - e1).norm() < 1e-12);
}

TEST_CASE("curvature symmetries, Bianchi, Kaehler identities") {
  std::mt19937 rng(17);
  for (int m : {1, 2, 3}) {
    const auto model = AmbientModel::projective_lift(m);
    const Vec p = random_unit(model.embedding_dimension(), rng);
    for (int trial = 0; trial < 8; ++trial) {
      const Vec u = random_tangent(model, p, rng), v = random_tangent(model, p, rng),
                w = random_tangent(model, p, rng), z = random_tangent(model, p, rng);
      const Vec ruvw = curvature_operator(model, p, u, v, w);
      // first Bianchi
      const Vec bianchi = ruvw + curvature_operator(model, p, v, w, u) +
                          curvature_operator(model, p, w, u, v);
      CHECK(bianchi.norm() < 1e-10);
      // pair symmetries
      CHECK(std::abs(ruvw.dot(z) + curvature_operator(model, p, u, v, z).dot(w)) < 1e-10);
      CHECK(std::abs(ruvw.dot(z) - curvature_operator(model, p, w, z, u).dot(v)) < 1e-10);
      // Kaehler: R(JU,JV) = R(U,V) and J R(U,V)W = R(U,V) JW
      const Vec rj = curvature_operator(model, p, apply_J(u), apply_J(v), w);
      CHECK((rj - ruvw).norm() < 1e-10);
      const Vec jr = apply_J(ruvw);
      const Vec rjw = curvature_operator(model, p, u, v, apply_J(w));
      CHECK((jr - rjw).norm() < 1e-10);
    }
  }
}

TEST_CASE("ambient Ricci trace equals the space-form closed form") {
  std::mt19937 rng(23);
  const auto flat = AmbientModel::flat(2);
  const Vec pz = Vec::Zero(flat.embedding_dimension());
  const Vec uf = random_tangent(flat, pz, rng);
  CHECK(ambient_ricci(flat, pz, uf, uf) == doctest::Approx(0.0));

  for (int m : {1, 2, 3, 4}) {
    const auto model = AmbientModel::projective_lift(m);
    const Vec p = random_unit(model.embedding_dimension(), rng);
    Vec u = random_tangent(model, p, rng);
    u /= u.norm();
    Vec v = random_tangent(model, p, rng);
    v -= v.dot(u) * u;
    v /= v.norm();
    // Ric = 2(m+1) eps <.,.> on N^m(4)
    CHECK(ambient_ricci(model, p, u, u) == doctest::Approx(2.0 * (m + 1)).epsilon(1e-10));
    CHECK(std::abs(ambient_ricci(model, p, u, v)) < 1e-10);
  }
}

TEST_CASE("horizontal projection: kernel, idempotence, self-adjointness") {
  std::mt19937 rng(31);
  const int dim = 6;
  const Vec p = random_unit(dim, rng);
  CHECK(horizontal_project(p, p).norm() < 1e-12);
  CHECK(horizontal_project(p, apply_J(p)).norm() < 1e-12);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 10; ++trial) {
    Vec u(dim), v(dim);
    for (int k = 0; k < dim; ++k) {
      u[k] = gauss(rng);
      v[k] = gauss(rng);
    }
    const Vec hu = horizontal_project(p, u);
    CHECK((horizontal_project(p, hu) - hu).norm() < 1e-12);
    CHECK(std::abs(hu.dot(v) - u.dot(horizontal_project(p, v))) < 1e-12);
    CHECK(std::abs(hu.dot(p)) < 1e-12);
    CHECK(std::abs(hu.dot(apply_J(p))) < 1e-12);
  }
  Vec bad = 2.0 * p;
  CHECK_THROWS_AS((void)horizontal_project(bad, p), std::invalid_argument);
}
