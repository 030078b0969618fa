#pragma once

#include <map>
#include <optional>
#include <string>

#include "lagbih/geometry.hpp"

namespace lagbih {

// max |<J e_i, e_j>| over frame pairs, plus the Legendrian defects
// |<i f, e_i>| on lifts. Zero characterizes Lagrangian immersions.
double lagrangian_defect(const GeometryContext& ctx);

// Pointwise fit of B against the H-umbilical pattern
//   B(e_1,e_1) = lambda J e_1, B(e_i,e_i) = mu J e_1,
//   B(e_1,e_i) = mu J e_i,    B(e_i,e_j) = 0 (i != j >= 2).
struct HUmbilicalFit {
  bool defined = false;       // false at minimal points with B != 0
  bool minimal_point = false; // H = 0 and B = 0
  double lambda = 0.0;
  double mu = 0.0;            // mean of <B(e_i,e_i), J e_1> over i >= 2
  double a = 0.0;             // (lambda + (m-1) mu)/m
  double fit_residual = 0.0;  // max deviation from the pattern
  double k = 0.0;             // mean of w^l_1(e_l), l >= 2
  double k_spread = 0.0;
};

HUmbilicalFit humbilical_fit(const GeometryContext& ctx);

// max_i |nabla^perp_{e_i}(H/|H|)|; nullopt when |H| < 1e-10 (undefined).
std::optional<double> pnmc_defect(const GeometryContext& ctx);

// Scalar jets of the fit quantities, for criteria that differentiate them.
struct HUmbilicalJets {
  Jet lambda, mu, a, k;
};
HUmbilicalJets humbilical_jets(const GeometryContext& ctx);

// Residuals of the seven Codazzi consequences (4.2)-(4.8) for H-umbilical
// immersions; keys "4.2".."4.8", each the max over its free indices.
std::map<std::string, double> lem2_residuals(const GeometryContext& ctx);

}  // namespace lagbih
