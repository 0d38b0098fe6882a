#pragma once

// Sensitivity of the closed-form ratings to the four factors. FG% and FT%
// are held fixed when differentiating.

#include <array>
#include <span>

#include "fourfactors/factors.hpp"

namespace fourfactors {

enum Factor : std::size_t { kEfg = 0, kFtr = 1, kOrb = 2, kTov = 3 };

struct Gradient4 {
  double d_efg = 0.0;
  double d_ftr = 0.0;
  double d_orb = 0.0;
  double d_tov = 0.0;

  std::array<double, 4> as_array() const { return {d_efg, d_ftr, d_orb, d_tov}; }
  Gradient4 operator-() const { return {-d_efg, -d_ftr, -d_orb, -d_tov}; }
  bool operator==(const Gradient4&) const = default;
};

// Non-negative weights summing to 1, ordered eFG%, FTr, ORB%, TOV%.
using FactorWeights = std::array<double, 4>;

struct FactorStats {
  double mean = 0.0;
  double std = 0.0;  // population
  double min = 0.0;
  double max = 0.0;
};

struct SeasonDistribution {
  FactorStats efg;
  FactorStats ftr;
  FactorStats orb;
  FactorStats tov;

  std::array<double, 4> stds() const { return {efg.std, ftr.std, orb.std, tov.std}; }
};

struct SeasonReference {
  TeamProfile reference;  // component-wise mean of the team profiles
  SeasonDistribution distribution;
};

struct NetGradients {
  Gradient4 offense;  // d NetRTG / d own factors
  Gradient4 defense;  // d NetRTG / d opponent factors
};

Gradient4 ortg_gradient(const TeamProfile& profile);
Gradient4 drtg_gradient(const TeamProfile& opp_profile);
NetGradients net_gradients(const TeamProfile& profile,
                           const TeamProfile& opp_profile);

// Central differences of ortg_factors with step h in each factor.
Gradient4 finite_diff_gradient(const TeamProfile& profile, double h);

FactorWeights normalized_derivatives(const Gradient4& g);
FactorWeights weighted_sensitivities(const Gradient4& g,
                                     const std::array<double, 4>& stds);
FactorWeights weighted_sensitivities(const Gradient4& g,
                                     const SeasonDistribution& dist);

SeasonReference season_reference(std::span<const TeamProfile> profiles);

// eFG% at which d ORTG/d FTr equals d ORTG/d ORB%, other inputs held at the
// reference. Below the root FTr dominates.
double crossover_efg(const TeamProfile& reference);

}  // namespace fourfactors
