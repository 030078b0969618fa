#include "lagbih/family.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lagbih {

MuRootSet mu_roots(int m) {
  if (m < 2) throw std::invalid_argument("mu_roots: m must be >= 2");
  const long double md = m;
  const long double s = sqrtl(md * md + 6.0L * md + 25.0L);
  const long double large = sqrtl((md + 5.0L + s) / (2.0L * md));
  const long double small = sqrtl((md + 5.0L - s) / (2.0L * md));
  MuRootSet out;
  out.m = m;
  out.roots = {static_cast<double>(large), static_cast<double>(small),
               static_cast<double>(-small), static_cast<double>(-large)};
  return out;
}

double lambda_from_mu(double mu) {
  if (mu == 0.0) throw std::invalid_argument("lambda_from_mu: mu must be nonzero");
  const long double m = mu;
  return static_cast<double>((m * m - 1.0L) / m);
}

double ScalarProfile::operator()(double x) const {
  auto table = JetTable::get(1);
  return eval(Jet::variable(table, 0, x, 0)).value();
}

std::vector<double> ScalarProfile::derivatives(double x, int order) const {
  auto table = JetTable::get(1);
  Jet j = eval(Jet::variable(table, 0, x, order));
  std::vector<double> out;
  out.reserve(order + 1);
  for (int k = 0; k <= order; ++k) {
    const int alpha[1] = {k};
    out.push_back(j.partial(alpha));
  }
  return out;
}

ScalarProfile constant_profile(double value) {
  return {"const:" + std::to_string(value),
          [value](const Jet& x) { return Jet::constant(x.table(), value, x.order()); }};
}

ScalarProfile sinusoidal_profile(double c0, double c1, double freq) {
  return {"sin:" + std::to_string(c0) + "," + std::to_string(c1) + "," + std::to_string(freq),
          [=](const Jet& x) { return c0 + c1 * sin(x * freq); }};
}

namespace {

using C = LegendreCurve::C;
using State = std::array<C, 4>;  // z1, z2, z1', z2'

State ode_rhs(double x, const State& y, const ScalarProfile& lambda) {
  const C il(0.0, lambda(x));
  return {y[2], y[3], il * y[2] - y[0], il * y[3] - y[1]};
}

State rk4_step(double x, const State& y, double h, const ScalarProfile& lambda) {
  const State k1 = ode_rhs(x, y, lambda);
  State t;
  for (int i = 0; i < 4; ++i) t[i] = y[i] + 0.5 * h * k1[i];
  const State k2 = ode_rhs(x + 0.5 * h, t, lambda);
  for (int i = 0; i < 4; ++i) t[i] = y[i] + 0.5 * h * k2[i];
  const State k3 = ode_rhs(x + 0.5 * h, t, lambda);
  for (int i = 0; i < 4; ++i) t[i] = y[i] + h * k3[i];
  const State k4 = ode_rhs(x + h, t, lambda);
  State out;
  for (int i = 0; i < 4; ++i)
    out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

double norm2(const C& a, const C& b) { return std::norm(a) + std::norm(b); }

LegendreCurve::DiagnosticsRow row_from_state(double x, const State& y) {
  LegendreCurve::DiagnosticsRow r;
  r.x = x;
  r.z1 = y[0];
  r.z2 = y[1];
  r.norm_defect = std::abs(std::sqrt(norm2(y[0], y[1])) - 1.0);
  r.speed_defect = std::abs(std::sqrt(norm2(y[2], y[3])) - 1.0);
  const C i(0.0, 1.0);
  r.legendre_defect = std::abs((i * y[0] * std::conj(y[2]) + i * y[1] * std::conj(y[3])).real());
  const double z2n = std::norm(y[1]);
  // mu is undefined where |z2| vanishes; reported as NaN, never fabricated
  r.mu = z2n < 1e-20 ? std::numeric_limits<double>::quiet_NaN()
                     : (i * y[1] * std::conj(y[3])).real() / z2n;
  return r;
}

}  // namespace

LegendreCurve LegendreCurve::chen(double mu) {
  if (mu == 0.0) throw std::invalid_argument("chen curve: mu must be nonzero");
  LegendreCurve c;
  c.closed_form_ = true;
  c.mu_ = mu;
  c.lambda_ = constant_profile(lambda_from_mu(mu));
  c.x_lo_ = 0.0;
  c.x_hi_ = 2.0 * M_PI;
  return c;
}

std::optional<double> LegendreCurve::chen_mu() const {
  if (closed_form_) return mu_;
  return std::nullopt;
}

LegendreCurve LegendreCurve::integrate(ScalarProfile lambda, const C2& z0, const C2& z0p,
                                       double x_lo, double x_hi, double step) {
  if (!(x_hi > x_lo)) throw std::invalid_argument("legendre integrate: empty interval");
  if (!(step > 0.0)) throw std::invalid_argument("legendre integrate: step must be positive");
  const C i(0.0, 1.0);
  const double n0 = std::abs(std::sqrt(norm2(z0[0], z0[1])) - 1.0);
  const double s0 = std::abs(std::sqrt(norm2(z0p[0], z0p[1])) - 1.0);
  const double leg0 =
      std::abs((i * z0[0] * std::conj(z0p[0]) + i * z0[1] * std::conj(z0p[1])).real());
  const double tan0 = std::abs((z0[0] * std::conj(z0p[0]) + z0[1] * std::conj(z0p[1])).real());
  if (n0 > 1e-10 || s0 > 1e-10 || leg0 > 1e-10 || tan0 > 1e-10)
    throw std::invalid_argument("legendre integrate: initial data violates the constraints");

  LegendreCurve c;
  c.lambda_ = std::move(lambda);
  c.x_lo_ = x_lo;
  c.x_hi_ = x_hi;
  const double span = x_hi - x_lo;
  const int n = std::max(1, static_cast<int>(std::ceil(span / step - 1e-12)));
  c.step_ = span / n;
  c.samples_.reserve(n + 1);

  State y = {z0[0], z0[1], z0p[0], z0p[1]};
  c.samples_.push_back(y);
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    y = rk4_step(x_lo + k * c.step_, y, c.step_, c.lambda_);
    c.samples_.push_back(y);
    const auto r = row_from_state(x_lo + (k + 1) * c.step_, y);
    worst = std::max({worst, r.norm_defect, r.speed_defect, r.legendre_defect});
  }
  if (worst > 1e-6)
    throw std::runtime_error("legendre integrate: invariant drift " + std::to_string(worst) +
                             " exceeds 1e-6; reduce the step");
  return c;
}

void LegendreCurve::state(double x, C2& z, C2& zp) const {
  if (closed_form_) {
    const double mu = mu_;
    const double c1 = std::sqrt(mu * mu / (mu * mu + 1.0));
    const double c2 = std::sqrt(1.0 / (mu * mu + 1.0));
    const C e1 = std::polar(1.0, -x / mu), e2 = std::polar(1.0, mu * x);
    const C i(0.0, 1.0);
    z = {c1 * e1, c2 * e2};
    zp = {(-i / mu) * c1 * e1, i * mu * c2 * e2};
    return;
  }
  if (x < x_lo_ - 1e-9 || x > x_hi_ + 1e-9)
    throw std::domain_error("legendre curve evaluated outside its interval");
  const double t = std::min(std::max(x, x_lo_), x_hi_);
  int k = static_cast<int>(std::floor((t - x_lo_) / step_));
  k = std::min(k, static_cast<int>(samples_.size()) - 1);
  State y = samples_[k];
  const double h = t - (x_lo_ + k * step_);
  if (std::abs(h) > 1e-15) y = rk4_step(x_lo_ + k * step_, y, h, lambda_);
  z = {y[0], y[1]};
  zp = {y[2], y[3]};
}

JetComplex LegendreCurve::component_jet(int component, const Jet& x) const {
  if (closed_form_) {
    const double mu = mu_;
    if (component == 0) {
      const double c1 = std::sqrt(mu * mu / (mu * mu + 1.0));
      const Jet phase = x / mu;
      return {c1 * cos(phase), -c1 * sin(phase)};
    }
    const double c2 = std::sqrt(1.0 / (mu * mu + 1.0));
    const Jet phase = x * mu;
    return {c2 * cos(phase), c2 * sin(phase)};
  }
  C2 z, zp;
  state(x.value(), z, zp);
  const auto lam = lambda_.derivatives(x.value(), 2);
  const C i(0.0, 1.0);
  // Taylor coefficients from the governing equation z'' = i*lambda*z' - z.
  std::array<C, 5> d;
  d[0] = z[component];
  d[1] = zp[component];
  d[2] = i * lam[0] * d[1] - d[0];
  d[3] = i * lam[1] * d[1] + i * lam[0] * d[2] - d[1];
  d[4] = i * lam[2] * d[1] + 2.0 * (i * lam[1] * d[2]) + i * lam[0] * d[3] - d[2];
  std::array<double, 5> re, im;
  for (int k = 0; k < 5; ++k) {
    re[k] = d[k].real();
    im[k] = d[k].imag();
  }
  return {compose_series(x, re), compose_series(x, im)};
}

LegendreCurve::Diagnostics LegendreCurve::diagnostics(int samples) const {
  Diagnostics out;
  std::vector<double> xs;
  if (closed_form_ || samples > 0) {
    const int n = samples > 0 ? samples : 256;
    for (int k = 0; k <= n; ++k) xs.push_back(x_lo_ + (x_hi_ - x_lo_) * k / n);
  } else {
    for (size_t k = 0; k < samples_.size(); ++k) xs.push_back(x_lo_ + k * step_);
  }
  bool first = true;
  for (double x : xs) {
    C2 z, zp;
    state(x, z, zp);
    const State y = {z[0], z[1], zp[0], zp[1]};
    auto r = row_from_state(x, y);
    out.rows.push_back(r);
    out.max_norm_defect = std::max(out.max_norm_defect, r.norm_defect);
    out.max_speed_defect = std::max(out.max_speed_defect, r.speed_defect);
    out.max_legendre_defect = std::max(out.max_legendre_defect, r.legendre_defect);
    if (std::isnan(r.mu)) {
      ++out.mu_undefined_count;
    } else if (first) {
      out.mu_min = out.mu_max = r.mu;
      first = false;
    } else {
      out.mu_min = std::min(out.mu_min, r.mu);
      out.mu_max = std::max(out.mu_max, r.mu);
    }
  }
  return out;
}

std::vector<Jet> sphere_chart(std::span<const Jet> angles) {
  const int d = static_cast<int>(angles.size());
  std::vector<Jet> y;
  y.reserve(d + 1);
  if (d == 0) throw std::invalid_argument("sphere_chart: need at least one angle");
  Jet sines = Jet::constant(angles[0].table(), 1.0, angles[0].order());
  for (int k = 0; k < d; ++k) {
    y.push_back(sines * cos(angles[k]));
    sines = sines * sin(angles[k]);
  }
  y.push_back(sines);
  return y;
}

void append_sphere_axes(SampleDomain& domain, int sphere_dim) {
  // Co-latitudes stay away from the chart poles; the last angle wraps.
  for (int k = 0; k + 1 < sphere_dim; ++k)
    domain.axes.push_back({0.2, M_PI - 0.2, false});
  domain.axes.push_back({0.0, 2.0 * M_PI, true});
}

ImmersionSpec chen_immersion(int m, double mu) {
  if (m < 2) throw std::invalid_argument("chen_immersion: m must be >= 2");
  if (mu == 0.0) throw std::invalid_argument("chen_immersion: mu must be nonzero");
  const double c1 = std::sqrt(mu * mu / (mu * mu + 1.0));
  const double c2 = std::sqrt(1.0 / (mu * mu + 1.0));

  ImmersionSpec spec;
  spec.name = "chen(m=" + std::to_string(m) + ",mu=" + std::to_string(mu) + ")";
  spec.target = AmbientModel::projective_lift(m);
  spec.domain.axes.push_back({0.0, 2.0 * M_PI, true});
  append_sphere_axes(spec.domain, m - 1);

  spec.map.chart_dim = m;
  spec.map.target_dim = 2 * m + 2;
  spec.map.eval = [m, mu, c1, c2](std::span<const Jet> vars) {
    const Jet& x = vars[0];
    const JetComplex z1{c1 * cos(x / mu), -c1 * sin(x / mu)};
    const JetComplex z2{c2 * cos(x * mu), c2 * sin(x * mu)};
    const auto y = sphere_chart(vars.subspan(1));
    std::vector<Jet> out;
    out.reserve(2 * m + 2);
    out.push_back(z1.re);
    out.push_back(z1.im);
    for (int k = 0; k < m; ++k) {
      out.push_back(z2.re * y[k]);
      out.push_back(z2.im * y[k]);
    }
    return out;
  };
  return spec;
}

ImmersionSpec warped_product_immersion(std::shared_ptr<const LegendreCurve> curve, int m) {
  return warped_product_immersion(std::move(curve), m, 0.0, 0.0);
}

ImmersionSpec warped_product_immersion(std::shared_ptr<const LegendreCurve> curve, int m,
                                       double x_lo, double x_hi) {
  if (m < 2) throw std::invalid_argument("warped_product_immersion: m must be >= 2");
  if (!(x_hi > x_lo)) {
    x_lo = curve->x_lo();
    x_hi = curve->x_hi();
  }
  // Reject windows where the warping factor |z2| vanishes.
  for (int k = 0; k <= 200; ++k) {
    const double x = x_lo + (x_hi - x_lo) * k / 200.0;
    LegendreCurve::C2 z, zp;
    curve->state(x, z, zp);
    if (std::abs(z[1]) < 1e-3)
      throw std::domain_error("warped_product_immersion: |z2| vanishes in the sample window");
  }

  ImmersionSpec spec;
  spec.name = "warped(m=" + std::to_string(m) + ")";
  spec.target = AmbientModel::projective_lift(m);
  spec.domain.axes.push_back({x_lo, x_hi, false});
  append_sphere_axes(spec.domain, m - 1);

  spec.map.chart_dim = m;
  spec.map.target_dim = 2 * m + 2;
  spec.map.eval = [m, curve](std::span<const Jet> vars) {
    const Jet& x = vars[0];
    const JetComplex z1 = curve->component_jet(0, x);
    const JetComplex z2 = curve->component_jet(1, x);
    const auto y = sphere_chart(vars.subspan(1));
    std::vector<Jet> out;
    out.reserve(2 * m + 2);
    out.push_back(z1.re);
    out.push_back(z1.im);
    for (int k = 0; k < m; ++k) {
      out.push_back(z2.re * y[k]);
      out.push_back(z2.im * y[k]);
    }
    return out;
  };
  return spec;
}

}  // namespace lagbih
