#pragma once

// The four factors and shooting percentages of a box-score line.

#include "fourfactors/ingest.hpp"

namespace fourfactors {

struct FourFactors {
  double efg = 0.0;      // (FGM + 0.5*3PM) / FGA
  double ftr = 0.0;      // FTM / FGA
  double orb_pct = 0.0;  // ORB / (FGA - FGM) unless stated otherwise
  double tov_pct = 0.0;  // TOV / (FGA + TOV - ORB + mu*FTA)

  bool operator==(const FourFactors&) const = default;
};

struct ShootingPct {
  double fg_pct = 0.0;
  double ft_pct = 0.0;  // 0 when FTA = 0

  bool operator==(const ShootingPct&) const = default;
};

// Everything the closed-form rating needs.
struct TeamProfile {
  FourFactors factors;
  ShootingPct shooting;
  double mu = 0.0;

  bool operator==(const TeamProfile&) const = default;
};

double efg(const BoxScoreLine& line);
double ftr(const BoxScoreLine& line);
double fg_pct(const BoxScoreLine& line);
double ft_pct(const BoxScoreLine& line);

// Offensive rebounds relative to the available rebounds; needs opp_drb.
double orb_pct_exact(const BoxScoreLine& line);
// Offensive rebounds relative to missed field goals.
double orb_pct_approx(const BoxScoreLine& line);

// Turnovers per estimated possession (offensive rebounds included).
double tov_pct(const BoxScoreLine& line, double mu);
// Turnovers per play: FGA + TOV + mu*FTA.
double tov_pct_trad(const BoxScoreLine& line, double mu);
// Rescales a traditional turnover rate to the possession-based one.
double convert_tov(double trad, const BoxScoreLine& line, double mu);

FourFactors four_factors(const BoxScoreLine& line, double mu);
ShootingPct shooting_pct(const BoxScoreLine& line);

// Profile with the approximate ORB% and possession-based TOV%.
TeamProfile make_profile(const BoxScoreLine& line, double mu);

}  // namespace fourfactors
