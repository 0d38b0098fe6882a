#include "fourfactors/ratings.hpp"

#include <cmath>

#include "fourfactors/error.hpp"

namespace fourfactors {

double estimate_possessions(const BoxScoreLine& l, double mu) {
  const double poss = static_cast<double>(l.fga + l.tov - l.orb) +
                      mu * static_cast<double>(l.fta);
  if (poss <= 0.0) {
    if (l.fga == 0 && l.tov == 0 && l.fta == 0 && l.orb == 0) {
      throw Error(ErrorCode::DivisionByZero, "no possessions for " + l.team_id);
    }
    throw Error(ErrorCode::NegativePossessions,
                "FGA + TOV - ORB + mu*FTA <= 0 for " + l.team_id);
  }
  return poss;
}

double ortg_box(const BoxScoreLine& line, double mu) {
  return static_cast<double>(line.pts) / estimate_possessions(line, mu);
}

double drtg_box(const BoxScoreLine& opp_line, double mu) {
  return ortg_box(opp_line, mu);
}

Ratings net_box(const BoxScoreLine& line, const BoxScoreLine& opp_line,
                double mu) {
  Ratings r;
  r.ortg = ortg_box(line, mu);
  r.drtg = drtg_box(opp_line, mu);
  r.net = r.ortg - r.drtg;
  return r;
}

double rating_divisor(const TeamProfile& p, double epsilon) {
  const auto& f = p.factors;
  double ft_term = 0.0;
  if (p.shooting.ft_pct > 0.0) {
    ft_term = p.mu * (1.0 - epsilon) * f.ftr / p.shooting.ft_pct;
  } else if (f.ftr != 0.0) {
    throw Error(ErrorCode::DegenerateDenominator, "FTr > 0 with FT% = 0");
  }
  const double d = 1.0 - f.orb_pct * (1.0 - p.shooting.fg_pct) + ft_term;
  if (!(d > kDenominatorGuard) || !std::isfinite(d)) {
    throw Error(ErrorCode::DegenerateDenominator,
                "1 - ORB%(1 - FG%) + mu FTr/FT% = " + std::to_string(d));
  }
  return d;
}

namespace {

double closed_form(const TeamProfile& p, double epsilon) {
  const auto& f = p.factors;
  return (1.0 - f.tov_pct) * (f.ftr + 2.0 * f.efg) / rating_divisor(p, epsilon);
}

}  // namespace

double ortg_factors(const TeamProfile& profile) { return closed_form(profile, 0.0); }

double drtg_factors(const TeamProfile& opp_profile) {
  return ortg_factors(opp_profile);
}

Ratings net_factors(const TeamProfile& profile, const TeamProfile& opp_profile) {
  Ratings r;
  r.ortg = ortg_factors(profile);
  r.drtg = drtg_factors(opp_profile);
  r.net = r.ortg - r.drtg;
  return r;
}

double ortg_factors_eps(const TeamProfile& profile, double epsilon) {
  return closed_form(profile, epsilon);
}

}  // namespace fourfactors
