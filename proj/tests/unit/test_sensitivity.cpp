#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "test_support.hpp"

using namespace fourfactors;
using fftest::profile;

namespace {

void expect_gradient(const Gradient4& g, std::array<double, 4> want, double tol) {
  const auto got = g.as_array();
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(got[i], want[i], tol) << "factor " << i;
}

using Stds = std::array<double, 4>;

double sum(const FactorWeights& w) { return std::accumulate(w.begin(), w.end(), 0.0); }

}  // namespace

TEST(OrtgGradient, PublishedProfiles) {
  expect_gradient(ortg_gradient(fftest::avg23()), {1.77, 0.253, 0.623, -1.34}, 0.01);
  expect_gradient(ortg_gradient(fftest::sac23()), {1.75, 0.236, 0.610, -1.38}, 0.01);
  expect_gradient(ortg_gradient(fftest::cho23()), {1.78, 0.259, 0.615, -1.27}, 0.01);
}

TEST(OrtgGradient, FullTurnoverProfile) {
  auto p = fftest::avg23();
  p.factors.tov_pct = 1.0;
  EXPECT_EQ(ortg_gradient(p).d_efg, 0.0);
}

TEST(OrtgGradient, SignsAtInteriorProfiles) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 1000; ++i) {
    const auto g = ortg_gradient(fftest::random_profile(rng));
    EXPECT_GT(g.d_efg, 0.0);
    EXPECT_GT(g.d_orb, 0.0);
    EXPECT_LT(g.d_tov, 0.0);
  }
}

TEST(FiniteDiff, AgreesAtSeasonAverage) {
  const auto a = ortg_gradient(fftest::avg23()).as_array();
  const auto n = finite_diff_gradient(fftest::avg23(), 1e-6).as_array();
  for (std::size_t i = 0; i < 4; ++i) EXPECT_LT(fftest::rel_err(a[i], n[i]), 1e-6);
}

TEST(FiniteDiff, RandomProfiles) {
  std::mt19937_64 rng(32);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto p = fftest::random_profile(rng);
    const auto a = ortg_gradient(p).as_array();
    const auto n = finite_diff_gradient(p, 1e-6).as_array();
    for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, fftest::rel_err(a[k], n[k]));
  }
  EXPECT_LT(worst, 1e-5);
}

TEST(FiniteDiff, DomainExit) {
  auto p = fftest::avg23();
  p.factors.tov_pct = 0.0;
  try {
    finite_diff_gradient(p, 1e-6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainExit);
  }
}

TEST(Gradient, AffineStructure) {
  auto lo = fftest::avg23();
  auto hi = lo;
  lo.factors.efg = 0.45;
  hi.factors.efg = 0.55;
  EXPECT_EQ(ortg_gradient(lo).d_efg, ortg_gradient(hi).d_efg);
  lo = hi = fftest::avg23();
  lo.factors.tov_pct = 0.10;
  hi.factors.tov_pct = 0.18;
  EXPECT_EQ(ortg_gradient(lo).d_tov, ortg_gradient(hi).d_tov);
}

TEST(Gradient, FtrSignFlipMatchesNumeric) {
  bool saw_negative = false;
  bool saw_positive = false;
  // The sign of d_ftr is set by mu * eFG% / FT%; poor free-throw shooting flips it.
  for (int i = 0; i <= 40; ++i) {
    auto p = profile(.45, 0.35, .30, .13, .45, 0.30 + 0.015 * i, .45);
    const double a = ortg_gradient(p).d_ftr;
    const double n = finite_diff_gradient(p, 1e-6).d_ftr;
    EXPECT_EQ(a > 0, n > 0) << "ft_pct " << p.shooting.ft_pct;
    (a < 0 ? saw_negative : saw_positive) = true;
  }
  EXPECT_TRUE(saw_negative);
  EXPECT_TRUE(saw_positive);
}

TEST(Gradient, FirstOrderPrediction) {
  const auto p = fftest::avg23();
  const auto g = ortg_gradient(p).as_array();
  const double base = ortg_factors(p);
  for (std::size_t i = 0; i < 4; ++i) {
    auto q = p;
    switch (i) {
      case kEfg: q.factors.efg += 1e-3; break;
      case kFtr: q.factors.ftr += 1e-3; break;
      case kOrb: q.factors.orb_pct += 1e-3; break;
      default: q.factors.tov_pct += 1e-3; break;
    }
    EXPECT_LT(std::abs(ortg_factors(q) - base - g[i] * 1e-3), 1e-4);
  }
}

TEST(DefensiveGradients, Definitional) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 100; ++i) {
    const auto p = fftest::random_profile(rng);
    const auto o = fftest::random_profile(rng);
    EXPECT_EQ(drtg_gradient(o), ortg_gradient(o));
    const auto net = net_gradients(p, o);
    EXPECT_EQ(net.offense, ortg_gradient(p));
    EXPECT_EQ(net.defense, -drtg_gradient(o));
  }
  const auto same = net_gradients(fftest::avg23(), fftest::avg23());
  EXPECT_EQ(net_factors(fftest::avg23(), fftest::avg23()).net, 0.0);
  EXPECT_NE(same.offense.d_efg, 0.0);
}

TEST(NormalizedDerivatives, SeasonAverage) {
  const auto w = normalized_derivatives(ortg_gradient(fftest::avg23()));
  const std::array<double, 4> want{0.45, 0.06, 0.16, 0.34};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(w[i], want[i], 0.01);
  EXPECT_NEAR(sum(w), 1.0, 1e-15);
}

TEST(NormalizedDerivatives, UnitAndHomogeneity) {
  EXPECT_EQ(normalized_derivatives({1, 0, 0, 0}), (FactorWeights{1, 0, 0, 0}));
  const Gradient4 g{1.2, -0.3, 0.5, -0.9};
  const auto w = normalized_derivatives(g);
  for (double k : {-3.0, 0.25, 7.0}) {
    const auto v = normalized_derivatives({k * g.d_efg, k * g.d_ftr, k * g.d_orb, k * g.d_tov});
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(v[i], w[i], 1e-15);
  }
  try {
    normalized_derivatives({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroGradient);
  }
}

TEST(WeightedSensitivities, Properties) {
  const auto g = ortg_gradient(fftest::avg23());
  const auto eq = weighted_sensitivities(g, Stds{0.02, 0.02, 0.02, 0.02});
  const auto nd = normalized_derivatives(g);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(eq[i], nd[i], 1e-15);
  const auto zero = weighted_sensitivities(g, Stds{0.02, 0.0, 0.02, 0.02});
  EXPECT_EQ(zero[1], 0.0);
  EXPECT_NEAR(sum(zero), 1.0, 1e-15);
  EXPECT_THROW(weighted_sensitivities(g, Stds{0.0, 0.0, 0.0, 0.0}), Error);
  EXPECT_THROW(weighted_sensitivities(g, Stds{-0.01, 0.0, 0.0, 0.01}), Error);
}

TEST(WeightedSensitivities, SeasonStds) {
  // eFG and ORB stds as published; FTr and TOV stds chosen consistent with them.
  const auto w = weighted_sensitivities(ortg_gradient(fftest::avg23()), Stds{0.0168, 0.0176, 0.0256, 0.0099});
  const std::array<double, 4> want{0.47, 0.07, 0.26, 0.21};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(w[i], want[i], 0.02);
}

TEST(SeasonReference, SingleProfile) {
  const std::vector<TeamProfile> one{fftest::sac23()};
  const auto ref = season_reference(one);
  EXPECT_DOUBLE_EQ(ref.reference.factors.efg, .572);
  EXPECT_DOUBLE_EQ(ref.reference.shooting.ft_pct, .790);
  for (double s : ref.distribution.stds()) EXPECT_EQ(s, 0.0);
  EXPECT_THROW(season_reference(std::vector<TeamProfile>{}), Error);
}

TEST(SeasonReference, PopulationStatsAndPermutation) {
  std::vector<TeamProfile> ps{profile(.50, .2, .25, .12, .45, .75, .42),
                              profile(.54, .2, .30, .14, .47, .77, .42),
                              profile(.58, .2, .20, .16, .49, .79, .42)};
  const auto ref = season_reference(ps);
  EXPECT_NEAR(ref.reference.factors.efg, 0.54, 1e-15);
  EXPECT_NEAR(ref.distribution.efg.std, std::sqrt(2.0 * 0.04 * 0.04 / 3.0), 1e-15);
  EXPECT_DOUBLE_EQ(ref.distribution.orb.min, 0.20);
  EXPECT_DOUBLE_EQ(ref.distribution.orb.max, 0.30);
  EXPECT_NEAR(ref.distribution.ftr.std, 0.0, 1e-15);

  std::mt19937_64 rng(34);
  std::vector<TeamProfile> season;
  for (int i = 0; i < 30; ++i) season.push_back(fftest::random_profile(rng));
  const auto a = season_reference(season);
  std::shuffle(season.begin(), season.end(), rng);
  const auto b = season_reference(season);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(a.distribution.stds()[i], b.distribution.stds()[i], 1e-14);
  }
  const auto ga = ortg_gradient(a.reference);
  const auto wa = weighted_sensitivities(ga, a.distribution);
  const auto wb = weighted_sensitivities(ortg_gradient(b.reference), b.distribution);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(wa[i], wb[i], 1e-12);
}

TEST(Crossover, SeasonAverage) {
  const double root = crossover_efg(fftest::avg23());
  EXPECT_NEAR(root, 0.353, 0.001);
  auto below = fftest::avg23();
  below.factors.efg = root - 0.01;
  auto above = fftest::avg23();
  above.factors.efg = root + 0.01;
  EXPECT_GT(ortg_gradient(below).d_ftr, ortg_gradient(below).d_orb);
  EXPECT_LT(ortg_gradient(above).d_ftr, ortg_gradient(above).d_orb);
  auto at = fftest::avg23();
  at.factors.efg = root;
  EXPECT_NEAR(ortg_gradient(at).d_ftr, ortg_gradient(at).d_orb, 1e-12);
}

TEST(Crossover, Degenerate) {
  // Without offensive rebounds or the FT term the root may leave the interior.
  auto p = profile(.5, .2, 0.0, .13, .45, .78, 0.0);
  try {
    const double root = crossover_efg(p);
    EXPECT_TRUE(root > 0.0 && root < 1.5);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoCrossover);
  }
  p.factors.tov_pct = 1.0;
  EXPECT_THROW(crossover_efg(p), Error);
}
