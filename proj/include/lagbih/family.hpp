#pragma once

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lagbih/immersion.hpp"
#include "lagbih/jet_vec.hpp"

namespace lagbih {

// The four closed-form values mu = +-sqrt((m+5 +- sqrt(m^2+6m+25))/(2m)),
// evaluated in extended precision. Index order: 0 largest positive,
// 1 smallest positive, 2 = -roots[1], 3 = -roots[0].
struct MuRootSet {
  int m = 0;
  std::array<double, 4> roots{};
};

MuRootSet mu_roots(int m);

// lambda = (mu^2 - 1)/mu; satisfies mu^2 - lambda*mu = 1 identically.
double lambda_from_mu(double mu);

// Scalar function of one variable, jet-evaluable (used for lambda(x)).
struct ScalarProfile {
  std::string description;
  std::function<Jet(const Jet&)> eval;

  double operator()(double x) const;
  // Derivative values (f, f', ..., f^(order)) at x.
  std::vector<double> derivatives(double x, int order) const;
};

ScalarProfile constant_profile(double value);
// c0 + c1*sin(freq*x)
ScalarProfile sinusoidal_profile(double c0, double c1, double freq);

// Unit-speed Legendre curve z(x) in S^3 in C^2 governed by
// z'' = i*lambda(x)*z' - z, either in Chen closed form or as an RK4-sampled
// solution with dense evaluation between samples.
class LegendreCurve {
public:
  using C = std::complex<double>;
  using C2 = std::array<C, 2>;

  static LegendreCurve chen(double mu);
  // Classical RK4 with fixed step; throws if the conserved quantities
  // (|z|, |z'|, the Legendre defect) drift beyond 1e-6.
  static LegendreCurve integrate(ScalarProfile lambda, const C2& z0, const C2& z0p, double x_lo,
                                 double x_hi, double step);

  bool closed_form() const { return closed_form_; }
  double x_lo() const { return x_lo_; }
  double x_hi() const { return x_hi_; }
  std::optional<double> chen_mu() const;
  const ScalarProfile& lambda() const { return lambda_; }

  void state(double x, C2& z, C2& zp) const;
  // z_1 or z_2 as a jet of the chart coordinate x (|component| in {0,1}).
  JetComplex component_jet(int component, const Jet& x) const;

  struct DiagnosticsRow {
    double x;
    C z1, z2;
    double norm_defect;      // | |z| - 1 |
    double speed_defect;     // | |z'| - 1 |
    double legendre_defect;  // | Re<iz, z'> |
    double mu;               // Re(i z2 conj(z2')) / |z2|^2; NaN where |z2| = 0
  };
  struct Diagnostics {
    std::vector<DiagnosticsRow> rows;
    double max_norm_defect = 0.0;
    double max_speed_defect = 0.0;
    double max_legendre_defect = 0.0;
    double mu_min = 0.0, mu_max = 0.0;  // over the rows where mu is defined
    int mu_undefined_count = 0;
  };
  Diagnostics diagnostics(int samples = 0) const;

private:
  LegendreCurve() = default;

  bool closed_form_ = false;
  double mu_ = 0.0;  // closed form only
  ScalarProfile lambda_;
  double x_lo_ = 0.0, x_hi_ = 0.0, step_ = 0.0;
  std::vector<std::array<C, 4>> samples_;  // (z1, z2, z1', z2') at x_lo + k*step
};

// Legendrian lift of the classified biharmonic family (eps = 1):
// (sqrt(mu^2/(mu^2+1)) e^{-ix/mu}, sqrt(1/(mu^2+1)) e^{i mu x} y), y in S^{m-1}.
// Any nonzero mu is accepted; the residual engine owns the biharmonicity
// verdict, so perturbed mu values double as negative controls.
ImmersionSpec chen_immersion(int m, double mu);

// Warped-product lift (z1(x), z2(x) y); requires |z2| bounded away from
// zero on the sampled window.
ImmersionSpec warped_product_immersion(std::shared_ptr<const LegendreCurve> curve, int m);
ImmersionSpec warped_product_immersion(std::shared_ptr<const LegendreCurve> curve, int m,
                                       double x_lo, double x_hi);

// Chart of S^{m-1}: co-latitudes kept in [0.2, pi-0.2], last angle periodic.
// Appends the sphere axes to `domain` and returns jets y_0..y_{m-1} when
// evaluated; exposed for immersion builders.
std::vector<Jet> sphere_chart(std::span<const Jet> angles);
void append_sphere_axes(SampleDomain& domain, int sphere_dim);

}  // namespace lagbih
