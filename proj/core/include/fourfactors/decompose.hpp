#pragma once

// Multiplicative split of the offensive rating:
//   ORTG = xPOSS * xSHOT * xEFF = xVOL * xEFF

#include <string_view>

#include "fourfactors/factors.hpp"

namespace fourfactors {

struct OrtgMultipliers {
  double xposs = 0.0;  // extra possessions from offensive rebounds and FT trips
  double xshot = 0.0;  // probability a possession produces a shot attempt
  double xeff = 0.0;   // expected points per shot attempt
  double xvol = 0.0;   // expected shot attempts per possession, xposs * xshot

  double ortg() const { return xposs * xshot * xeff; }
};

enum class Component { XPoss, XShot, XEff, XVol };

Component component_from_string(std::string_view name);
std::string_view to_string(Component c);

OrtgMultipliers multipliers(const TeamProfile& profile);

// Rating after multiplying one component by k (> 0). Scaling xvol scales
// xposs*xshot as a unit.
double scale_experiment(const OrtgMultipliers& m, Component which, double k);
// Rating after multiplying each of xposs, xshot, xeff by k.
double scale_all(const OrtgMultipliers& m, double k);

}  // namespace fourfactors
