#include "lagbih/smooth_map.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace lagbih {

std::vector<Jet> SmoothMap::at(std::span<const double> p, int order) const {
  if (static_cast<int>(p.size()) != chart_dim)
    throw std::invalid_argument("chart point dimension mismatch");
  auto table = JetTable::get(chart_dim);
  std::vector<Jet> vars;
  vars.reserve(chart_dim);
  for (int v = 0; v < chart_dim; ++v) vars.push_back(Jet::variable(table, v, p[v], order));
  auto out = eval(vars);
  if (static_cast<int>(out.size()) != target_dim)
    throw std::runtime_error("smooth map returned wrong number of components");
  return out;
}

std::vector<double> SmoothMap::values(std::span<const double> p) const {
  auto jets = at(p, 0);
  std::vector<double> out;
  out.reserve(jets.size());
  for (const Jet& j : jets) out.push_back(j.value());
  return out;
}

double jet_derivative(const SmoothMap& map, int component, std::span<const double> p,
                      std::span<const int> alpha) {
  int order = 0;
  for (int e : alpha) order += e;
  if (order > kMaxJetOrder) throw std::invalid_argument("derivative order exceeds 4");
  auto jets = map.at(p, order);
  return jets[component].partial(alpha);
}

namespace {

struct StencilPoint {
  int offset;
  double weight;
};

// Central stencils for d^k/dx^k, leading error O(h^2).
std::span<const StencilPoint> stencil(int k) {
  static const std::array<StencilPoint, 1> s0{{{0, 1.0}}};
  static const std::array<StencilPoint, 2> s1{{{-1, -0.5}, {1, 0.5}}};
  static const std::array<StencilPoint, 3> s2{{{-1, 1.0}, {0, -2.0}, {1, 1.0}}};
  static const std::array<StencilPoint, 4> s3{{{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}}};
  static const std::array<StencilPoint, 5> s4{
      {{-2, 1.0}, {-1, -4.0}, {0, 6.0}, {1, -4.0}, {2, 1.0}}};
  switch (k) {
    case 0: return s0;
    case 1: return s1;
    case 2: return s2;
    case 3: return s3;
    case 4: return s4;
    default: throw std::invalid_argument("per-variable derivative order exceeds 4");
  }
}

double tensor_difference(const SmoothMap& map, int component, std::span<const double> p,
                         std::span<const int> alpha, double h) {
  std::vector<double> shifted(p.begin(), p.end());
  double scale = 1.0;
  for (int v = 0; v < static_cast<int>(alpha.size()); ++v)
    for (int k = 0; k < alpha[v]; ++k) scale /= h;

  // Recursive tensor product over the variables with nonzero alpha.
  std::function<double(int)> recurse = [&](int v) -> double {
    if (v == static_cast<int>(alpha.size())) return map.values(shifted)[component];
    if (alpha[v] == 0) return recurse(v + 1);
    double acc = 0.0;
    const double base = p[v];
    for (const auto& sp : stencil(alpha[v])) {
      shifted[v] = base + sp.offset * h;
      acc += sp.weight * recurse(v + 1);
    }
    shifted[v] = base;
    return acc;
  };
  return recurse(0) * scale;
}

}  // namespace

double fd_derivative(const SmoothMap& map, int component, std::span<const double> p,
                     std::span<const int> alpha, double step) {
  if (step <= 0.0) throw std::invalid_argument("fd step must be positive");
  int order = 0;
  for (int e : alpha) order += e;
  if (order > kMaxJetOrder) throw std::invalid_argument("derivative order exceeds 4");
  if (order == kMaxJetOrder && step < 1e-4)
    throw std::invalid_argument("fd step below 1e-4 for a 4th derivative: cancellation guard");
  const double coarse = tensor_difference(map, component, p, alpha, step);
  const double fine = tensor_difference(map, component, p, alpha, step * 0.5);
  return fine + (fine - coarse) / 3.0;
}

}  // namespace lagbih
