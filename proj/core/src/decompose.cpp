#include "fourfactors/decompose.hpp"

#include <string>

#include "fourfactors/error.hpp"
#include "fourfactors/ratings.hpp"

namespace fourfactors {

Component component_from_string(std::string_view name) {
  if (name == "xposs") return Component::XPoss;
  if (name == "xshot") return Component::XShot;
  if (name == "xeff") return Component::XEff;
  if (name == "xvol") return Component::XVol;
  throw Error(ErrorCode::UnknownComponent, std::string(name));
}

std::string_view to_string(Component c) {
  switch (c) {
    case Component::XPoss: return "xposs";
    case Component::XShot: return "xshot";
    case Component::XEff: return "xeff";
    case Component::XVol: return "xvol";
  }
  return "?";
}

OrtgMultipliers multipliers(const TeamProfile& profile) {
  const auto& f = profile.factors;
  OrtgMultipliers m;
  m.xposs = 1.0 / rating_divisor(profile);
  m.xshot = 1.0 - f.tov_pct;
  m.xeff = 2.0 * f.efg + f.ftr;
  m.xvol = m.xposs * m.xshot;
  return m;
}

double scale_experiment(const OrtgMultipliers& m, Component which, double k) {
  if (!(k > 0.0)) {
    throw Error(ErrorCode::DomainExit, "scale factor must be positive");
  }
  switch (which) {
    case Component::XPoss: return (k * m.xposs) * m.xshot * m.xeff;
    case Component::XShot: return m.xposs * (k * m.xshot) * m.xeff;
    case Component::XEff: return m.xposs * m.xshot * (k * m.xeff);
    case Component::XVol: return (k * m.xvol) * m.xeff;
  }
  throw Error(ErrorCode::UnknownComponent, "component id out of range");
}

double scale_all(const OrtgMultipliers& m, double k) {
  if (!(k > 0.0)) {
    throw Error(ErrorCode::DomainExit, "scale factor must be positive");
  }
  return (k * m.xposs) * (k * m.xshot) * (k * m.xeff);
}

}  // namespace fourfactors
