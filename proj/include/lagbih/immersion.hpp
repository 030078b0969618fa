#pragma once

#include <string>
#include <vector>

#include "lagbih/ambient.hpp"
#include "lagbih/smooth_map.hpp"

namespace lagbih {

struct AxisSpec {
  double lo = 0.0;
  double hi = 1.0;
  bool periodic = false;
};

// Tensor-product sample grid. Periodic axes exclude the right endpoint
// (wrap), non-periodic axes include both ends.
struct SampleDomain {
  std::vector<AxisSpec> axes;

  std::vector<double> axis_points(int axis, int count) const;
  std::vector<std::vector<double>> grid(const std::vector<int>& counts) const;
  std::vector<int> default_counts() const;
};

// Evaluable description of a smooth immersion of an m-dimensional chart
// into an ambient model.
struct ImmersionSpec {
  std::string name;
  AmbientModel target;
  SmoothMap map;
  SampleDomain domain;
};

}  // namespace lagbih
