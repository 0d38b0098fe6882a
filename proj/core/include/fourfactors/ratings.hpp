#pragma once

// Offensive, defensive and net ratings in points per possession, computed
// either from box-score bookkeeping or from the four-factor closed form.

#include "fourfactors/factors.hpp"

namespace fourfactors {

inline constexpr double kMuHistorical = 0.44;
inline constexpr double kMu2023 = 0.42;

// Divisors at or below this raise DegenerateDenominator.
inline constexpr double kDenominatorGuard = 1e-9;

struct Ratings {
  double ortg = 0.0;
  double drtg = 0.0;
  double net = 0.0;
};

// FGA + TOV - ORB + mu*FTA
double estimate_possessions(const BoxScoreLine& line, double mu);

double ortg_box(const BoxScoreLine& line, double mu);
// Same bookkeeping applied to the opponents' aggregate line.
double drtg_box(const BoxScoreLine& opp_line, double mu);
Ratings net_box(const BoxScoreLine& line, const BoxScoreLine& opp_line, double mu);

// Possessions per field goal attempt expressed in four-factor terms:
//   1 - ORB%*(1 - FG%) + mu*(1 - epsilon)*FTr/FT%
// The free-throw term is 0 when FT% = 0 (then FTr is 0 as well).
double rating_divisor(const TeamProfile& p, double epsilon = 0.0);

// (1 - TOV%)(FTr + 2 eFG%) / (1 - ORB%(1 - FG%) + mu FTr/FT%)
double ortg_factors(const TeamProfile& profile);
double drtg_factors(const TeamProfile& opp_profile);
Ratings net_factors(const TeamProfile& profile, const TeamProfile& opp_profile);

// Closed form with mu scaled by (1 - epsilon), accounting for offensive
// rebounds of missed possession-ending free throws.
double ortg_factors_eps(const TeamProfile& profile, double epsilon);

inline double per100(double rating) { return 100.0 * rating; }

}  // namespace fourfactors
