#include "fourfactors/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fourfactors/error.hpp"
#include "fourfactors/ratings.hpp"

namespace fourfactors {
namespace {

// d(divisor)/d(FTr): mu / FT%, or 0 when the team never shot free throws.
double ft_term_slope(const TeamProfile& p) {
  return p.shooting.ft_pct > 0.0 ? p.mu / p.shooting.ft_pct : 0.0;
}

double& factor_ref(TeamProfile& p, std::size_t i) {
  switch (i) {
    case kEfg: return p.factors.efg;
    case kFtr: return p.factors.ftr;
    case kOrb: return p.factors.orb_pct;
    default: return p.factors.tov_pct;
  }
}

double factor_value(const TeamProfile& p, std::size_t i) {
  switch (i) {
    case kEfg: return p.factors.efg;
    case kFtr: return p.factors.ftr;
    case kOrb: return p.factors.orb_pct;
    default: return p.factors.tov_pct;
  }
}

bool in_domain(const TeamProfile& p) {
  const auto& f = p.factors;
  return f.efg >= 0.0 && f.efg <= 1.5 && f.ftr >= 0.0 && f.orb_pct >= 0.0 &&
         f.orb_pct <= 1.0 && f.tov_pct >= 0.0 && f.tov_pct <= 1.0;
}

FactorWeights normalize(const std::array<double, 4>& v) {
  double sum = 0.0;
  for (double x : v) sum += std::abs(x);
  if (!(sum > 0.0)) throw Error(ErrorCode::ZeroGradient, "all components zero");
  FactorWeights w{};
  for (std::size_t i = 0; i < 4; ++i) w[i] = std::abs(v[i]) / sum;
  return w;
}

}  // namespace

Gradient4 ortg_gradient(const TeamProfile& p) {
  const auto& f = p.factors;
  const double d = rating_divisor(p);
  const double keep = 1.0 - f.tov_pct;
  const double xeff = f.ftr + 2.0 * f.efg;
  const double rebound_base = 1.0 - f.orb_pct * (1.0 - p.shooting.fg_pct);

  Gradient4 g;
  g.d_efg = 2.0 * keep / d;
  g.d_ftr = keep * (rebound_base - 2.0 * f.efg * ft_term_slope(p)) / (d * d);
  g.d_orb = keep * (1.0 - p.shooting.fg_pct) * xeff / (d * d);
  g.d_tov = -xeff / d;
  return g;
}

Gradient4 drtg_gradient(const TeamProfile& opp_profile) {
  return ortg_gradient(opp_profile);
}

NetGradients net_gradients(const TeamProfile& profile,
                           const TeamProfile& opp_profile) {
  return {ortg_gradient(profile), -drtg_gradient(opp_profile)};
}

Gradient4 finite_diff_gradient(const TeamProfile& profile, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::DomainExit, "step must be positive");
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    TeamProfile up = profile;
    TeamProfile down = profile;
    factor_ref(up, i) += h;
    factor_ref(down, i) -= h;
    if (!in_domain(up) || !in_domain(down)) {
      throw Error(ErrorCode::DomainExit,
                  "perturbation of factor " + std::to_string(i) +
                      " leaves the valid domain");
    }
    try {
      out[i] = (ortg_factors(up) - ortg_factors(down)) / (2.0 * h);
    } catch (const Error& e) {
      throw Error(ErrorCode::DomainExit, e.what());
    }
  }
  return {out[0], out[1], out[2], out[3]};
}

FactorWeights normalized_derivatives(const Gradient4& g) {
  return normalize(g.as_array());
}

FactorWeights weighted_sensitivities(const Gradient4& g,
                                     const std::array<double, 4>& stds) {
  const auto grad = g.as_array();
  std::array<double, 4> v{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!(stds[i] >= 0.0)) {
      throw Error(ErrorCode::DomainExit, "standard deviations must be >= 0");
    }
    v[i] = grad[i] * stds[i];
  }
  return normalize(v);
}

FactorWeights weighted_sensitivities(const Gradient4& g,
                                     const SeasonDistribution& dist) {
  return weighted_sensitivities(g, dist.stds());
}

namespace {

FactorStats describe(std::span<const TeamProfile> profiles, std::size_t factor) {
  FactorStats s;
  const double n = static_cast<double>(profiles.size());
  s.min = s.max = factor_value(profiles[0], factor);
  double sum = 0.0;
  for (const auto& p : profiles) {
    const double x = factor_value(p, factor);
    sum += x;
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
  }
  s.mean = sum / n;
  double ss = 0.0;
  for (const auto& p : profiles) {
    const double dx = factor_value(p, factor) - s.mean;
    ss += dx * dx;
  }
  s.std = std::sqrt(ss / n);
  // Rounding in the mean can push it a hair outside [min, max].
  s.mean = std::clamp(s.mean, s.min, s.max);
  return s;
}

}  // namespace

SeasonReference season_reference(std::span<const TeamProfile> profiles) {
  if (profiles.empty()) throw Error(ErrorCode::EmptyScope, "no team profiles");
  SeasonReference out;
  out.distribution.efg = describe(profiles, kEfg);
  out.distribution.ftr = describe(profiles, kFtr);
  out.distribution.orb = describe(profiles, kOrb);
  out.distribution.tov = describe(profiles, kTov);

  const double n = static_cast<double>(profiles.size());
  double fg = 0.0, ft = 0.0, mu = 0.0;
  for (const auto& p : profiles) {
    fg += p.shooting.fg_pct;
    ft += p.shooting.ft_pct;
    mu += p.mu;
  }
  auto& ref = out.reference;
  ref.factors = {out.distribution.efg.mean, out.distribution.ftr.mean,
                 out.distribution.orb.mean, out.distribution.tov.mean};
  ref.shooting = {fg / n, ft / n};
  ref.mu = mu / n;
  return out;
}

double crossover_efg(const TeamProfile& ref) {
  // d_ftr = d_orb reduces, after cancelling (1 - TOV%)/divisor^2, to
  //   1 - ORB%(1 - FG%) - 2 eFG% mu/FT% = (1 - FG%)(FTr + 2 eFG%)
  // which is linear in eFG%.
  const auto& f = ref.factors;
  const double miss = 1.0 - ref.shooting.fg_pct;
  if (f.tov_pct >= 1.0) {
    throw Error(ErrorCode::NoCrossover, "TOV% = 1 zeroes every derivative");
  }
  const double slope = 2.0 * miss + 2.0 * ft_term_slope(ref);
  const double level = 1.0 - f.orb_pct * miss - miss * f.ftr;
  if (!(std::abs(slope) > 0.0)) {
    throw Error(ErrorCode::NoCrossover, "derivatives never cross");
  }
  const double root = level / slope;
  if (!(root > 0.0 && root < 1.5)) {
    throw Error(ErrorCode::NoCrossover,
                "crossing at eFG% = " + std::to_string(root) +
                    " is outside (0, 1.5)");
  }
  return root;
}

}  // namespace fourfactors
