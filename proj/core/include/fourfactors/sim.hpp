#pragma once

// Seeded possession simulator. Produces play-by-play streams whose
// parameters are known, so the closed-form identities and the free-throw
// estimators can be checked against ground truth.
//
// Random numbers come from std::mt19937_64 (output sequence fixed by the
// C++ standard); uniforms are the top 53 bits scaled to [0, 1). Changing
// how draws are consumed bumps kSimulatorVersion.

#include <cstdint>
#include <string>
#include <vector>

#include "fourfactors/factors.hpp"
#include "fourfactors/ingest.hpp"
#include "fourfactors/possession.hpp"

namespace fourfactors {

inline constexpr int kSimulatorVersion = 1;

// Relative weights of the free-throw trip types.
struct SetMix {
  double and_one = 0.24;  // made field goal plus one free throw
  double two = 0.71;
  double three = 0.05;
};

struct GenParams {
  double p_tov = 0.13;     // turnover per shot opportunity
  double p_three = 0.39;   // share of field goal attempts that are threes
  double p2 = 0.54;
  double p3 = 0.36;
  double p_ftrip = 0.10;   // shot opportunity that becomes a free-throw trip
  SetMix set_mix;
  double p_ft = 0.78;
  double p_orb_fg = 0.25;  // offensive rebound of a missed field goal
  double p_orb_ft = 0.0;   // offensive rebound of a missed final free throw
  std::uint64_t seed = 1;
  std::int64_t n_possessions = 100000;  // per team
  int possessions_per_game = 100;       // per team
  int periods = 4;
  std::string team = "SIM";
  std::string opponent = "OPP";
  std::string season = "SIM";
};

// Throws InvalidParams when a probability is outside [0, 1], the set mix
// is empty, or possessions could continue forever.
void validate(const GenParams& params);

struct SimResult {
  std::vector<GameLog> games;
  BoxScoreLine line;      // params.team
  BoxScoreLine opp_line;  // params.opponent
};

SimResult simulate(const GenParams& params);

// Deterministic seed for replicate `index` of a run seeded with `seed`.
std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t index);

// Long-run values implied by the parameters. Ratios follow from expected
// counts per shot opportunity; TOV% uses the exact possession count.
struct ExpectedStats {
  double efg = 0.0;
  double ftr = 0.0;
  double orb_pct = 0.0;  // ORB / (FGA - FGM), free-throw rebounds included
  double tov_pct = 0.0;
  double fg_pct = 0.0;
  double ft_pct = 0.0;
  double mu = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double epsilon = 0.0;
  double opportunities_per_possession = 0.0;
};

ExpectedStats expected_stats(const GenParams& params);

struct EpsIdentityReport {
  FtParams measured;
  double alpha_se = 0.0;
  double beta_se = 0.0;
  double epsilon_se = 0.0;
  Count possessions = 0;          // counted from the stream
  double ortg_exact = 0.0;        // PTS / counted possessions
  double ortg_box = 0.0;          // bookkeeping with the stream's mu
  double orb_pct_fg_only = 0.0;   // offensive rebounds of field goals only
  double ortg_fg_only = 0.0;      // closed form, field-goal ORB%, epsilon = 0
  double ortg_fg_only_eps = 0.0;  // same with the measured epsilon
  double residual_base = 0.0;     // |ortg_fg_only - ortg_exact|
  double residual_eps = 0.0;      // |ortg_fg_only_eps - ortg_exact|
};

// Throws EmptyScope when the team never missed a possession-ending FT.
EpsIdentityReport verify_eps_identity(const SimResult& result,
                                      const std::string& team);
EpsIdentityReport verify_eps_identity(const GenParams& params);

struct IdentityCheck {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

// The deterministic checks behind `simulate --verify`.
std::vector<IdentityCheck> verify_identities(const GenParams& params,
                                             const SimResult& result);

}  // namespace fourfactors
