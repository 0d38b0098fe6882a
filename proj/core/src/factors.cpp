#include "fourfactors/factors.hpp"

#include "fourfactors/error.hpp"
#include "fourfactors/ratings.hpp"

namespace fourfactors {
namespace {

double ratio(Count num, Count den, const char* what) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, what);
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double efg(const BoxScoreLine& l) {
  if (l.fga == 0) throw Error(ErrorCode::DivisionByZero, "eFG% with FGA = 0");
  return (static_cast<double>(l.fgm) + 0.5 * static_cast<double>(l.tpm)) /
         static_cast<double>(l.fga);
}

double ftr(const BoxScoreLine& l) { return ratio(l.ftm, l.fga, "FTr with FGA = 0"); }

double fg_pct(const BoxScoreLine& l) {
  return ratio(l.fgm, l.fga, "FG% with FGA = 0");
}

double ft_pct(const BoxScoreLine& l) {
  if (l.fta == 0) return 0.0;
  return ratio(l.ftm, l.fta, "FT%");
}

double orb_pct_exact(const BoxScoreLine& l) {
  if (!l.opp_drb) {
    throw Error(ErrorCode::MissingOpponentRebounds,
                "exact ORB% needs opp_drb for " + l.team_id);
  }
  return ratio(l.orb, l.orb + *l.opp_drb, "ORB + opp DRB = 0");
}

double orb_pct_approx(const BoxScoreLine& l) {
  return ratio(l.orb, l.fga - l.fgm, "approximate ORB% with FGA = FGM");
}

double tov_pct(const BoxScoreLine& l, double mu) {
  return static_cast<double>(l.tov) / estimate_possessions(l, mu);
}

double tov_pct_trad(const BoxScoreLine& l, double mu) {
  const double plays =
      static_cast<double>(l.fga + l.tov) + mu * static_cast<double>(l.fta);
  if (plays <= 0.0) throw Error(ErrorCode::DivisionByZero, "no plays");
  return static_cast<double>(l.tov) / plays;
}

double convert_tov(double trad, const BoxScoreLine& l, double mu) {
  const double plays =
      static_cast<double>(l.fga + l.tov) + mu * static_cast<double>(l.fta);
  return trad * plays / estimate_possessions(l, mu);
}

FourFactors four_factors(const BoxScoreLine& line, double mu) {
  return {efg(line), ftr(line), orb_pct_approx(line), tov_pct(line, mu)};
}

ShootingPct shooting_pct(const BoxScoreLine& line) {
  return {fg_pct(line), ft_pct(line)};
}

TeamProfile make_profile(const BoxScoreLine& line, double mu) {
  return {four_factors(line, mu), shooting_pct(line), mu};
}

}  // namespace fourfactors
