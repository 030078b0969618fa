#include "lagbih/catalog.hpp"

#include <cmath>
#include <stdexcept>

namespace lagbih {

ImmersionSpec flat_plane_immersion(int m) {
  ImmersionSpec spec;
  spec.name = "flat-plane(m=" + std::to_string(m) + ")";
  spec.target = AmbientModel::flat(m);
  for (int k = 0; k < m; ++k) spec.domain.axes.push_back({-1.0, 1.0, false});
  spec.map.chart_dim = m;
  spec.map.target_dim = 2 * m;
  spec.map.eval = [m](std::span<const Jet> vars) {
    std::vector<Jet> out;
    out.reserve(2 * m);
    for (int k = 0; k < m; ++k) {
      out.push_back(vars[k]);
      out.push_back(Jet::constant(vars[0].table(), 0.0, vars[0].order()));
    }
    return out;
  };
  return spec;
}

ImmersionSpec circle_immersion() {
  ImmersionSpec spec;
  spec.name = "circle";
  spec.target = AmbientModel::flat(1);
  spec.domain.axes.push_back({0.0, 2.0 * M_PI, true});
  spec.map.chart_dim = 1;
  spec.map.target_dim = 2;
  spec.map.eval = [](std::span<const Jet> vars) {
    return std::vector<Jet>{cos(vars[0]), sin(vars[0])};
  };
  return spec;
}

ImmersionSpec clifford_torus_immersion(int m) {
  ImmersionSpec spec;
  spec.name = "clifford-lagrangian-torus(m=" + std::to_string(m) + ")";
  spec.target = AmbientModel::projective_lift(m);
  for (int k = 0; k < m; ++k) spec.domain.axes.push_back({0.0, 2.0 * M_PI, true});
  spec.map.chart_dim = m;
  spec.map.target_dim = 2 * m + 2;
  const double r = 1.0 / std::sqrt(m + 1.0);
  spec.map.eval = [m, r](std::span<const Jet> vars) {
    Jet theta0 = -vars[0];
    for (int k = 1; k < m; ++k) theta0 -= vars[k];
    std::vector<Jet> out;
    out.reserve(2 * m + 2);
    out.push_back(r * cos(theta0));
    out.push_back(r * sin(theta0));
    for (int k = 0; k < m; ++k) {
      out.push_back(r * cos(vars[k]));
      out.push_back(r * sin(vars[k]));
    }
    return out;
  };
  return spec;
}

ImmersionSpec holomorphic_control_immersion() {
  // z -> (z, z): a complex line, J-invariant tangent plane (not Lagrangian)
  ImmersionSpec spec;
  spec.name = "holomorphic-control";
  spec.target = AmbientModel::flat(2);
  spec.domain.axes.push_back({-1.0, 1.0, false});
  spec.domain.axes.push_back({-1.0, 1.0, false});
  spec.map.chart_dim = 2;
  spec.map.target_dim = 4;
  spec.map.eval = [](std::span<const Jet> vars) {
    return std::vector<Jet>{vars[0], vars[1], vars[0], vars[1]};
  };
  return spec;
}

ImmersionSpec real_sphere_lift_immersion(int m) {
  // real points of CP^m: the round totally geodesic S^m through S^{2m+1}
  ImmersionSpec spec;
  spec.name = "real-sphere-lift(m=" + std::to_string(m) + ")";
  spec.target = AmbientModel::projective_lift(m);
  append_sphere_axes(spec.domain, m);
  spec.map.chart_dim = m;
  spec.map.target_dim = 2 * m + 2;
  spec.map.eval = [m](std::span<const Jet> vars) {
    const auto y = sphere_chart(vars);
    std::vector<Jet> out;
    out.reserve(2 * m + 2);
    for (int k = 0; k <= m; ++k) {
      out.push_back(y[k]);
      out.push_back(Jet::constant(vars[0].table(), 0.0, vars[0].order()));
    }
    return out;
  };
  return spec;
}

std::shared_ptr<const LegendreCurve> generic_ode_curve(int m) {
  // Chen initial data with a sinusoidally perturbed lambda profile: a
  // genuine unit-speed Legendre curve that is H-umbilical but neither PNMC
  // nor biharmonic.
  const double mu = mu_roots(m).roots[0];
  const double lambda = lambda_from_mu(mu);
  const double c1 = std::sqrt(mu * mu / (mu * mu + 1.0));
  const double c2 = std::sqrt(1.0 / (mu * mu + 1.0));
  const LegendreCurve::C i(0.0, 1.0);
  const LegendreCurve::C2 z0 = {c1, c2};
  const LegendreCurve::C2 z0p = {-i * c1 / mu, i * mu * c2};
  auto curve = LegendreCurve::integrate(sinusoidal_profile(lambda, 0.15 * lambda, 1.0), z0, z0p,
                                        0.0, 2.2, 1e-3);
  return std::make_shared<LegendreCurve>(std::move(curve));
}

double resolve_mu(const RunConfig& config) {
  if (config.mu_value) return *config.mu_value;
  const int root = config.mu_root.value_or(0);
  return mu_roots(config.m).roots[root];
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"chen",
       "classified biharmonic PNMC Lagrangian H-umbilical family in CP^m(4)",
       {"split", "kahler", "spaceform", "humbilical", "reduced"},
       [](const RunConfig& c) { return chen_immersion(c.m, resolve_mu(c)); }},
      {"flat-plane",
       "totally geodesic Lagrangian R^m in C^m (harmonic control)",
       {"split", "kahler", "spaceform", "humbilical"},
       [](const RunConfig& c) { return flat_plane_immersion(c.m); }},
      {"circle",
       "unit circle in C (non-biharmonic control, |tau_2| = 1)",
       {"split", "kahler", "spaceform"},
       [](const RunConfig&) { return circle_immersion(); }},
      {"clifford-lagrangian-torus",
       "minimal Lagrangian torus lift (harmonic control in CP^m)",
       {"split", "kahler", "spaceform"},
       [](const RunConfig& c) { return clifford_torus_immersion(c.m); }},
      {"warped-from-ode",
       "warped product over an RK4-integrated generic Legendre curve",
       {"split", "kahler", "spaceform", "humbilical", "reduced"},
       [](const RunConfig& c) { return warped_product_immersion(generic_ode_curve(c.m), c.m); }},
      {"holomorphic-control",
       "holomorphic curve z -> (z, z) in C^2 (non-Lagrangian control)",
       {"split"},
       [](const RunConfig&) { return holomorphic_control_immersion(); }},
  };
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& key) {
  for (const auto& entry : catalog())
    if (entry.key == key) return entry;
  throw std::invalid_argument("unknown catalog immersion: " + key);
}

ImmersionSpec build_catalog_immersion(const RunConfig& config) {
  return catalog_entry(config.immersion).build(config);
}

}  // namespace lagbih
