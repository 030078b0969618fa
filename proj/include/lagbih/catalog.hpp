#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lagbih/family.hpp"
#include "lagbih/immersion.hpp"
#include "lagbih/report.hpp"

namespace lagbih {

struct CatalogEntry {
  std::string key;
  std::string description;
  std::vector<std::string> default_criteria;
  std::function<ImmersionSpec(const RunConfig&)> build;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& key);
ImmersionSpec build_catalog_immersion(const RunConfig& config);

// mu for a chen-style run: explicit value wins, otherwise the root index
// (default root 0).
double resolve_mu(const RunConfig& config);

// standalone immersions also used directly by tests
ImmersionSpec flat_plane_immersion(int m);
ImmersionSpec circle_immersion();
ImmersionSpec clifford_torus_immersion(int m);
ImmersionSpec holomorphic_control_immersion();
ImmersionSpec real_sphere_lift_immersion(int m);

// the fixed generic curve behind the warped-from-ode catalog entry
std::shared_ptr<const LegendreCurve> generic_ode_curve(int m);

}  // namespace lagbih
