#pragma once

// Exact possession counting from play-by-play streams and estimation of the
// free-throw parameters used by the box-score possession estimate.

#include <map>
#include <span>
#include <string>

#include "fourfactors/ingest.hpp"

namespace fourfactors {

// mu:      share of free throw attempts that end a possession
// alpha:   offensive-rebound probability on a missed possession-ending FT
// beta:    make probability of possession-ending free throws
// epsilon: alpha * (1 - beta), offensive rebounds per possession-ending FT
struct FtParams {
  double mu = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double epsilon = 0.0;
};

struct CountOptions {
  // NBA box scores omit team rebounds; set to count them as ORB/DRB.
  bool include_team_rebounds = false;
};

struct TeamTally {
  Count possessions = 0;
  Count ft_total = 0;
  Count ft_possession_ending = 0;
  Count ft_possession_ending_made = 0;
  Count ft_and_one = 0;
  Count ft_technical = 0;
  // FT attempts of regular (non-and-one, non-technical) sets by set size.
  std::map<int, Count> ft_set_histogram;
  Count ft_final_missed = 0;
  Count ft_final_missed_orb = 0;
  // Offensive rebounds split by the kind of miss they follow.
  Count orb_after_fg = 0;
  Count orb_after_ft = 0;

  bool operator==(const TeamTally&) const = default;
  TeamTally& operator+=(const TeamTally& other);
};

struct PossessionTally {
  std::map<std::string, TeamTally> teams;

  TeamTally total() const;
  PossessionTally& operator+=(const PossessionTally& other);
  bool operator==(const PossessionTally&) const = default;
};

// True iff the free throw is the last of its set and neither an and-one nor
// a technical. Throws WrongEventKind for other events.
bool classify_free_throw(const PbpEvent& ev);
bool classify_free_throw(const event::FreeThrow& ft) noexcept;

PossessionTally count_possessions(const GameLog& log, CountOptions opts = {});
PossessionTally count_possessions(std::span<const GameLog> logs,
                                  CountOptions opts = {});

enum class MuScope { League, PerTeam };

struct MuEstimate {
  double league = 0.0;
  std::map<std::string, double> per_team;  // filled in PerTeam scope
};

MuEstimate estimate_mu(std::span<const GameLog> logs,
                       MuScope scope = MuScope::League);
double mu_from_tally(const TeamTally& tally);

FtParams estimate_ft_reb_params(std::span<const GameLog> logs,
                                CountOptions opts = {});
FtParams ft_params_from_tally(const TeamTally& tally);

// Aggregates one team's box-score line from the events of a game.
BoxScoreLine box_line_from_log(const GameLog& log, const std::string& team,
                               const std::string& season = {},
                               CountOptions opts = {});

}  // namespace fourfactors
