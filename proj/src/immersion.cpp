#include "lagbih/immersion.hpp"

#include <stdexcept>

namespace lagbih {

std::vector<double> SampleDomain::axis_points(int axis, int count) const {
  const AxisSpec& a = axes.at(axis);
  if (count < 1) throw std::invalid_argument("axis point count must be positive");
  std::vector<double> pts;
  pts.reserve(count);
  if (a.periodic) {
    const double h = (a.hi - a.lo) / count;
    for (int k = 0; k < count; ++k) pts.push_back(a.lo + k * h);
  } else if (count == 1) {
    pts.push_back(0.5 * (a.lo + a.hi));
  } else {
    const double h = (a.hi - a.lo) / (count - 1);
    for (int k = 0; k < count; ++k) pts.push_back(a.lo + k * h);
  }
  return pts;
}

std::vector<std::vector<double>> SampleDomain::grid(const std::vector<int>& counts) const {
  if (counts.size() != axes.size())
    throw std::invalid_argument("grid counts do not match the chart dimension");
  std::vector<std::vector<double>> per_axis;
  size_t total = 1;
  for (size_t a = 0; a < axes.size(); ++a) {
    per_axis.push_back(axis_points(static_cast<int>(a), counts[a]));
    total *= per_axis.back().size();
  }
  std::vector<std::vector<double>> out;
  out.reserve(total);
  std::vector<size_t> idx(axes.size(), 0);
  for (size_t n = 0; n < total; ++n) {
    std::vector<double> p(axes.size());
    for (size_t a = 0; a < axes.size(); ++a) p[a] = per_axis[a][idx[a]];
    out.push_back(std::move(p));
    // row-major increment, last axis fastest
    for (int a = static_cast<int>(axes.size()) - 1; a >= 0; --a) {
      if (++idx[a] < per_axis[a].size()) break;
      idx[a] = 0;
    }
  }
  return out;
}

std::vector<int> SampleDomain::default_counts() const {
  const int m = static_cast<int>(axes.size());
  int per_axis = m <= 1 ? 64 : (m == 2 ? 32 : 8);
  return std::vector<int>(axes.size(), per_axis);
}

}  // namespace lagbih
