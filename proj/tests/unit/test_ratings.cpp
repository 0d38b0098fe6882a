#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace fourfactors;
using fftest::profile;

namespace {

BoxScoreLine line_with(Count fga, Count fgm, Count tov, Count orb, Count fta, Count ftm) {
  BoxScoreLine l;
  l.fga = fga;
  l.fgm = fgm;
  l.tov = tov;
  l.orb = orb;
  l.fta = fta;
  l.ftm = ftm;
  l.pts = ftm + 2 * fgm;
  return l;
}

}  // namespace

TEST(EstimatePossessions, Arithmetic) {
  EXPECT_NEAR(estimate_possessions(line_with(80, 30, 12, 10, 20, 10), 0.44), 90.8, 1e-12);
  EXPECT_DOUBLE_EQ(estimate_possessions(line_with(80, 30, 12, 0, 20, 10), 0.0), 92.0);
}

TEST(EstimatePossessions, Errors) {
  try {
    estimate_possessions(line_with(10, 0, 0, 12, 0, 0), 0.44);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativePossessions);
  }
  try {
    estimate_possessions(line_with(0, 0, 0, 0, 0, 0), 0.44);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
  }
}

TEST(EstimatePossessions, MatchesStreamCountWithExactMu) {
  GenParams p;
  p.n_possessions = 20000;
  const auto sim = simulate(p);
  const auto t = count_possessions(sim.games).teams.at("SIM");
  EXPECT_NEAR(estimate_possessions(sim.line, mu_from_tally(t)),
              static_cast<double>(t.possessions), 1e-9);
}

TEST(OrtgBox, Basics) {
  BoxScoreLine l = line_with(100, 50, 0, 0, 0, 0);
  EXPECT_DOUBLE_EQ(ortg_box(l, 0.42), 1.0);
  BoxScoreLine d = l;
  d.fga *= 2;
  d.fgm *= 2;
  d.pts *= 2;
  EXPECT_DOUBLE_EQ(ortg_box(d, 0.42), ortg_box(l, 0.42));
}

TEST(DefensiveRatings, Symmetry) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto l = fftest::random_line(rng);
    EXPECT_EQ(drtg_box(l, 0.42), ortg_box(l, 0.42));
    const Ratings r = net_box(l, l, 0.42);
    EXPECT_EQ(r.net, 0.0);
    const auto o = fftest::random_line(rng);
    const Ratings q = net_box(l, o, 0.42);
    EXPECT_NEAR(q.net, q.ortg - q.drtg, 1e-12);
  }
  BoxScoreLine shutout = line_with(80, 0, 10, 5, 0, 0);
  EXPECT_DOUBLE_EQ(drtg_box(shutout, 0.42), 0.0);
}

TEST(OrtgFactors, Limits) {
  EXPECT_DOUBLE_EQ(ortg_factors(profile(.55, .2, .3, 1.0, .48, .78, .42)), 0.0);
  EXPECT_DOUBLE_EQ(ortg_factors(profile(0.0, 0.0, .3, .1, .0, .78, .42)), 0.0);
}

TEST(OrtgFactors, SeasonAverageProfile) {
  EXPECT_NEAR(ortg_factors(fftest::avg23()), 1.152, 0.001);
}

TEST(OrtgFactors, DegenerateDenominator) {
  try {
    ortg_factors(profile(.5, .0, 1.0, .1, 0.0, .78, .42));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateDenominator);
  }
}

TEST(OrtgFactors, NoFreeThrowsDropsTerm) {
  const auto p = profile(.5, 0.0, .25, .1, .45, 0.0, .42);
  EXPECT_DOUBLE_EQ(ortg_factors(p), 0.9 * 1.0 / (1.0 - 0.25 * 0.55));
}

TEST(OrtgFactors, ClosedFormIdentityRandomized) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 5000; ++i) {
    const auto l = fftest::random_line(rng);
    const double mu = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double box = ortg_box(l, mu);
    EXPECT_LT(std::abs(ortg_factors(make_profile(l, mu)) - box), 1e-12) << i;
  }
}

TEST(DrtgFactors, Definitional) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 100; ++i) {
    const auto p = fftest::random_profile(rng);
    EXPECT_EQ(drtg_factors(p), ortg_factors(p));
    EXPECT_EQ(net_factors(p, p).net, 0.0);
  }
  EXPECT_EQ(net_factors(fftest::avg23(), fftest::avg23()).net, 0.0);
}

TEST(OrtgFactorsEps, Reductions) {
  const auto p = fftest::avg23();
  EXPECT_EQ(ortg_factors_eps(p, 0.0), ortg_factors(p));
  TeamProfile no_ft = p;
  no_ft.mu = 0.0;
  EXPECT_DOUBLE_EQ(ortg_factors_eps(p, 1.0), ortg_factors(no_ft));
  const double ratio = ortg_factors_eps(p, 0.015) / ortg_factors(p);
  EXPECT_GT(ratio, 1.0);
  EXPECT_LT(ratio, 1.002);
}

TEST(Ratings, MonotoneAtInteriorProfiles) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    const auto p = fftest::random_profile(rng);
    const double base = ortg_factors(p);
    TeamProfile q = p;
    q.factors.efg += 0.01;
    EXPECT_GT(ortg_factors(q), base);
    q = p;
    q.factors.orb_pct += 0.01;
    EXPECT_GT(ortg_factors(q), base);
    q = p;
    q.factors.tov_pct += 0.01;
    EXPECT_LT(ortg_factors(q), base);
  }
}

TEST(Ratings, Per100) {
  EXPECT_EQ(per100(1.153), 100.0 * 1.153);
  EXPECT_EQ(kMuHistorical, 0.44);
  EXPECT_EQ(kMu2023, 0.42);
}
