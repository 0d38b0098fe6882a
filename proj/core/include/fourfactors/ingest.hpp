#pragma once

// Box-score and play-by-play records and their CSV readers/writers.
//
// Box-score header (exact, ordered):
//   team_id,season,fga,fgm,tpa,tpm,fta,ftm,orb,drb,tov,pts,opp_drb
// Play-by-play header (exact, ordered):
//   game_id,period,clock_s,team_id,kind,made,three,index_in_set,set_size,
//   and_one,technical,offensive,team_rebound
//
// In play-by-play rows the columns that do not apply to a kind are left
// empty and booleans are written as 0/1. `kind` is one of field_goal,
// free_throw, turnover, rebound, period_end.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fourfactors {

using Count = std::int64_t;

struct BoxScoreLine {
  std::string team_id;
  std::string season;
  Count fga = 0;
  Count fgm = 0;
  Count tpa = 0;
  Count tpm = 0;
  Count fta = 0;
  Count ftm = 0;
  Count orb = 0;
  Count drb = 0;
  Count tov = 0;
  Count pts = 0;
  std::optional<Count> opp_drb;

  bool operator==(const BoxScoreLine&) const = default;
};

// Returns the name of the first violated invariant, or nullopt.
std::optional<std::string_view> check_invariants(const BoxScoreLine& line);

// Sums counts component-wise. opp_drb stays present only if present in both.
BoxScoreLine& operator+=(BoxScoreLine& lhs, const BoxScoreLine& rhs);

namespace event {

struct FieldGoal {
  bool made = false;
  bool three = false;
  bool operator==(const FieldGoal&) const = default;
};

struct FreeThrow {
  bool made = false;
  int index_in_set = 1;
  int set_size = 1;
  bool and_one = false;
  bool technical = false;
  bool operator==(const FreeThrow&) const = default;
};

struct Turnover {
  bool operator==(const Turnover&) const = default;
};

struct Rebound {
  bool offensive = false;
  bool team_rebound = false;
  bool operator==(const Rebound&) const = default;
};

struct PeriodEnd {
  bool operator==(const PeriodEnd&) const = default;
};

}  // namespace event

using EventKind = std::variant<event::FieldGoal, event::FreeThrow,
                               event::Turnover, event::Rebound,
                               event::PeriodEnd>;

struct PbpEvent {
  std::string game_id;
  int period = 1;
  double clock_s = 0.0;  // seconds remaining in the period
  std::string team_id;   // may be empty for period_end rows
  EventKind kind;

  bool operator==(const PbpEvent&) const = default;
};

struct GameLog {
  std::string game_id;
  std::string home_team;  // first team to appear in the stream
  std::string away_team;  // second team to appear, or empty
  std::vector<PbpEvent> events;

  bool operator==(const GameLog&) const = default;
};

inline constexpr std::string_view kBoxScoreHeader =
    "team_id,season,fga,fgm,tpa,tpm,fta,ftm,orb,drb,tov,pts,opp_drb";
inline constexpr std::string_view kPbpHeader =
    "game_id,period,clock_s,team_id,kind,made,three,index_in_set,set_size,"
    "and_one,technical,offensive,team_rebound";

std::vector<BoxScoreLine> parse_box_scores(std::istream& source);
std::vector<BoxScoreLine> parse_box_scores(std::string_view source);
void write_box_scores(std::ostream& out, const std::vector<BoxScoreLine>& lines);

// Groups events by game_id in order of first appearance and validates
// ordering and the per-game invariants.
std::vector<GameLog> parse_pbp(std::istream& source);
std::vector<GameLog> parse_pbp(std::string_view source);
void write_pbp(std::ostream& out, const std::vector<GameLog>& logs);

// Validates a GameLog built in memory (same rules as parse_pbp).
void validate_game_log(const GameLog& log);

std::string_view kind_name(const EventKind& kind);

}  // namespace fourfactors
