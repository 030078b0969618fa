#pragma once

#include <map>
#include <string>

#include "lagbih/geometry.hpp"
#include "lagbih/lagrangian.hpp"

namespace lagbih {

// Residual norms of one biharmonicity criterion at one point. Relative
// residuals are scaled by m|H|; when the scale is below 1e-12 (minimal
// points) the absolute value is reported instead.
struct CriterionResidual {
  std::string name;
  bool applicable = true;
  std::string skip_reason;
  double tangential_norm = 0.0;
  double normal_norm = 0.0;
  double scale = 0.0;  // m |H|
  std::map<std::string, double> per_equation;

  double relative(double norm) const { return scale > 1e-12 ? norm / scale : norm; }
  double tangential_rel() const { return relative(tangential_norm); }
  double normal_rel() const { return relative(normal_norm); }
  double max_rel() const { return std::max(tangential_rel(), normal_rel()); }
};

// Lemma-level split: tangential trace(nabla A_H) + trace A_{nabla^perp H}
// minus the tangential curvature sum; normal Delta^perp H + trace B(A_H.,.)
// minus the normal curvature sum. Valid for any isometric immersion.
CriterionResidual split_residual(const GeometryContext& ctx);

// Kaehler rewriting with the (nabla^perp B) trace difference on the
// tangential side and the Ric^N / Ric / J-trace terms on the normal side.
// Requires a Lagrangian input.
CriterionResidual kahler_residual(const GeometryContext& ctx);

// Space-form specialization: the curvature contraction collapses to
// (m+3) eps H on the normal side and drops from the tangential side.
CriterionResidual spaceform_residual(const GeometryContext& ctx);

// The four scalar equations (1), (2), (5.3), (5.4) for H-umbilical inputs,
// from jet-differentiated a, lambda, mu and the extracted connection forms.
CriterionResidual humbilical_residual(const GeometryContext& ctx);

// The reduced system (1'), (2'), (5.3'), (5.4') with the single k; needs
// mu != 0 and a well-defined k.
CriterionResidual reduced_residual(const GeometryContext& ctx);

// |mu^2 - lambda mu - eps|, |lambda^2 + (m-1) mu^2 - eps (m+3)| and, when
// eps = 1, |lambda - (mu^2-1)/mu|. Keys: res_516, res_53pp, res_lambda.
std::map<std::string, double> classification_identities(int m, double lambda, double mu,
                                                         double epsilon);

}  // namespace lagbih
