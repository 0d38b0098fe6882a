#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "test_support.hpp"

using namespace fourfactors;

namespace {

// Ratio estimator sum(x)/sum(y) over i.i.d. games with its delta-method
// standard error.
struct RatioStat {
  std::vector<double> x, y;

  void add(double xi, double yi) {
    x.push_back(xi);
    y.push_back(yi);
  }
  double value() const { return sum(x) / sum(y); }
  double se() const {
    const double r = value();
    const double n = static_cast<double>(x.size());
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) ss += (x[i] - r * y[i]) * (x[i] - r * y[i]);
    return std::sqrt(ss * n / (n - 1.0)) / sum(y);
  }
  static double sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double d : v) s += d;
    return s;
  }
};

}  // namespace

TEST(Simulate, AllTurnovers) {
  GenParams p;
  p.p_tov = 1.0;
  p.n_possessions = 1000;
  const auto sim = simulate(p);
  EXPECT_EQ(sim.line.tov, 1000);
  EXPECT_EQ(sim.line.pts, 0);
  EXPECT_EQ(sim.line.fga, 0);
  const auto t = count_possessions(sim.games).teams.at("SIM");
  EXPECT_EQ(t.possessions, 1000);
  EXPECT_DOUBLE_EQ(tov_pct(sim.line, 0.42), 1.0);
}

TEST(Simulate, AllMakes) {
  GenParams p;
  p.p_tov = 0.0;
  p.p_orb_fg = 0.0;
  p.p_ftrip = 0.0;
  p.p2 = p.p3 = 1.0;
  p.n_possessions = 50000;
  const auto sim = simulate(p);
  const auto t = count_possessions(sim.games).teams.at("SIM");
  EXPECT_EQ(t.possessions, sim.line.fga);
  const double ortg = static_cast<double>(sim.line.pts) / static_cast<double>(t.possessions);
  const double share = static_cast<double>(sim.line.tpa) / static_cast<double>(sim.line.fga);
  EXPECT_DOUBLE_EQ(ortg, 2.0 + share);
  const double se = std::sqrt(p.p_three * (1 - p.p_three) / static_cast<double>(p.n_possessions));
  EXPECT_LT(std::abs(ortg - (2.0 + p.p_three)), 4.0 * se);
}

TEST(Simulate, Reproducible) {
  GenParams p;
  p.n_possessions = 20000;
  p.p_orb_ft = 0.1;
  const auto a = simulate(p);
  const auto b = simulate(p);
  EXPECT_EQ(a.games, b.games);
  EXPECT_EQ(a.line, b.line);
  p.seed = 2;
  EXPECT_NE(simulate(p).line, a.line);
  EXPECT_NE(replicate_seed(1, 0), replicate_seed(1, 1));
  EXPECT_EQ(replicate_seed(9, 4), replicate_seed(9, 4));
}

TEST(Simulate, StreamMatchesAggregateAndCount) {
  GenParams p;
  p.n_possessions = 30000;
  p.p_orb_ft = 0.2;
  p.set_mix = {0.2, 0.6, 0.2};
  const auto sim = simulate(p);
  BoxScoreLine sum;
  sum.team_id = "SIM";
  sum.season = "SIM";
  sum.opp_drb = 0;
  for (const auto& g : sim.games) sum += box_line_from_log(g, "SIM", "SIM");
  EXPECT_EQ(sum, sim.line);
  const auto tally = count_possessions(sim.games);
  EXPECT_EQ(tally.teams.at("SIM").possessions, p.n_possessions);
  EXPECT_EQ(tally.teams.at("OPP").possessions, p.n_possessions);
  for (const auto& g : sim.games) EXPECT_NO_THROW(validate_game_log(g));
}

TEST(Simulate, InvalidParams) {
  auto expect_invalid = [](GenParams p) {
    try {
      simulate(p);
      ADD_FAILURE() << "accepted invalid params";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidParams);
    }
  };
  GenParams p;
  p.p2 = 1.5;
  expect_invalid(p);
  p = GenParams{};
  p.set_mix = {0, 0, 0};
  expect_invalid(p);
  p = GenParams{};
  p.p_tov = 0.0;
  p.p2 = p.p3 = 0.0;
  p.p_ftrip = 0.0;
  p.p_orb_fg = 1.0;
  expect_invalid(p);
  p = GenParams{};
  p.n_possessions = -1;
  expect_invalid(p);
}

TEST(Simulate, ClosedFormIdentityMillionPossessions) {
  GenParams p;
  p.n_possessions = 1000000;
  p.seed = 17;
  const auto sim = simulate(p);
  for (const auto& c : verify_identities(p, sim)) EXPECT_TRUE(c.passed) << c.name;
  const auto t = count_possessions(sim.games).teams.at("SIM");
  const double exact = static_cast<double>(sim.line.pts) / static_cast<double>(t.possessions);
  EXPECT_LT(std::abs(ortg_factors(make_profile(sim.line, mu_from_tally(t))) - exact), 1e-9);
  EXPECT_LT(std::abs(ortg_box(sim.line, mu_from_tally(t)) - exact), 1e-9);
}

TEST(Simulate, LawOfLargeNumbers) {
  GenParams p;
  p.n_possessions = 1000000;
  p.seed = 23;
  p.p_orb_ft = 0.15;
  const auto sim = simulate(p);
  const ExpectedStats e = expected_stats(p);

  RatioStat efg_s, ftr_s, orb_s, tov_s, fg_s, ft_s, mu_s;
  for (const auto& g : sim.games) {
    const auto l = box_line_from_log(g, "SIM");
    const auto t = count_possessions(g).teams.at("SIM");
    const auto d = [](Count c) { return static_cast<double>(c); };
    efg_s.add(d(l.fgm) + 0.5 * d(l.tpm), d(l.fga));
    ftr_s.add(d(l.ftm), d(l.fga));
    orb_s.add(d(l.orb), d(l.fga - l.fgm));
    tov_s.add(d(l.tov), d(t.possessions));
    fg_s.add(d(l.fgm), d(l.fga));
    ft_s.add(d(l.ftm), d(l.fta));
    mu_s.add(d(t.ft_possession_ending), d(t.ft_total));
  }
  const std::pair<const char*, std::pair<const RatioStat*, double>> checks[] = {
      {"efg", {&efg_s, e.efg}}, {"ftr", {&ftr_s, e.ftr}},       {"orb", {&orb_s, e.orb_pct}},
      {"tov", {&tov_s, e.tov_pct}}, {"fg", {&fg_s, e.fg_pct}}, {"ft", {&ft_s, e.ft_pct}},
      {"mu", {&mu_s, e.mu}}};
  for (const auto& [name, c] : checks) {
    const auto& [stat, expected] = c;
    EXPECT_LT(std::abs(stat->value() - expected), 4.0 * stat->se())
        << name << " measured " << stat->value() << " expected " << expected
        << " se " << stat->se();
  }

  const auto r = verify_eps_identity(sim, "SIM");
  EXPECT_LT(std::abs(r.measured.alpha - e.alpha), 4.0 * r.alpha_se);
  EXPECT_LT(std::abs(r.measured.beta - e.beta), 4.0 * r.beta_se);
}

TEST(EpsIdentity, NoFreeThrowRebounds) {
  GenParams p;
  p.n_possessions = 50000;
  const auto r = verify_eps_identity(p);
  EXPECT_EQ(r.measured.epsilon, 0.0);
  EXPECT_EQ(r.measured.alpha, 0.0);
  EXPECT_LT(r.residual_base, 1e-9);
  EXPECT_EQ(r.residual_base, r.residual_eps);
}

TEST(EpsIdentity, PerfectShootersHaveNoMisses) {
  GenParams p;
  p.n_possessions = 5000;
  p.p_ft = 1.0;
  p.p_orb_ft = 0.3;
  try {
    verify_eps_identity(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyScope);
  }
}

TEST(EpsIdentity, TunedToSeasonValues) {
  GenParams p;
  p.n_possessions = 1000000;
  p.seed = 29;
  p.p_ft = 0.798;
  p.p_orb_ft = 0.076;
  const auto r = verify_eps_identity(p);
  EXPECT_NEAR(r.measured.epsilon, 0.076 * (1 - 0.798), 3.0 * r.epsilon_se);
  EXPECT_NEAR(r.measured.epsilon, 0.015, 0.002);
  EXPECT_GT(r.residual_base, 1e-6);
  EXPECT_LT(r.residual_eps, 1e-9);
}

TEST(ExpectedStats, ClosedForms) {
  GenParams p;
  p.set_mix = {0.0, 1.0, 0.0};
  EXPECT_DOUBLE_EQ(expected_stats(p).mu, 0.5);
  p.set_mix = {0.0, 0.0, 1.0};
  EXPECT_DOUBLE_EQ(expected_stats(p).mu, 1.0 / 3.0);
  p = GenParams{};
  p.p_tov = 1.0;
  EXPECT_DOUBLE_EQ(expected_stats(p).tov_pct, 1.0);
  EXPECT_NEAR(expected_stats(GenParams{}).mu, 0.42, 0.001);
}
