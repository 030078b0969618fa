#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lagbih/jet.hpp"

namespace lagbih {

// A jet-evaluable smooth map from an m-dimensional chart into R^D.
// The evaluator receives the chart coordinates as jets of some order and
// must return one jet per target component, built only from jet arithmetic
// (so the same closure yields plain values when fed order-0 jets).
struct SmoothMap {
  int chart_dim = 0;
  int target_dim = 0;
  std::function<std::vector<Jet>(std::span<const Jet>)> eval;

  std::vector<Jet> at(std::span<const double> p, int order = kMaxJetOrder) const;
  std::vector<double> values(std::span<const double> p) const;
};

// d^alpha of one map component by jet propagation.
double jet_derivative(const SmoothMap& map, int component, std::span<const double> p,
                      std::span<const int> alpha);

// Independent oracle: tensor-product central differences with one Richardson
// halving. The raw stencils are O(step^2); extrapolation cancels the leading
// term, leaving an O(step^4) model plus roundoff ~ eps/step^|alpha|.
// Rejects step < 1e-4 for |alpha| = 4 (catastrophic cancellation guard).
double fd_derivative(const SmoothMap& map, int component, std::span<const double> p,
                     std::span<const int> alpha, double step);

}  // namespace lagbih
