#include "fourfactors/possession.hpp"

#include "fourfactors/error.hpp"

namespace fourfactors {

TeamTally& TeamTally::operator+=(const TeamTally& o) {
  possessions += o.possessions;
  ft_total += o.ft_total;
  ft_possession_ending += o.ft_possession_ending;
  ft_possession_ending_made += o.ft_possession_ending_made;
  ft_and_one += o.ft_and_one;
  ft_technical += o.ft_technical;
  for (const auto& [size, n] : o.ft_set_histogram) ft_set_histogram[size] += n;
  ft_final_missed += o.ft_final_missed;
  ft_final_missed_orb += o.ft_final_missed_orb;
  orb_after_fg += o.orb_after_fg;
  orb_after_ft += o.orb_after_ft;
  return *this;
}

TeamTally PossessionTally::total() const {
  TeamTally sum;
  for (const auto& [team, t] : teams) sum += t;
  return sum;
}

PossessionTally& PossessionTally::operator+=(const PossessionTally& other) {
  for (const auto& [team, t] : other.teams) teams[team] += t;
  return *this;
}

bool classify_free_throw(const event::FreeThrow& ft) noexcept {
  return ft.index_in_set == ft.set_size && !ft.and_one && !ft.technical;
}

bool classify_free_throw(const PbpEvent& ev) {
  const auto* ft = std::get_if<event::FreeThrow>(&ev.kind);
  if (ft == nullptr) {
    throw Error(ErrorCode::WrongEventKind,
                "expected free_throw, got " + std::string(kind_name(ev.kind)));
  }
  return classify_free_throw(*ft);
}

namespace {

bool counts_rebound(const event::Rebound& rb, const CountOptions& opts) {
  return !rb.team_rebound || opts.include_team_rebounds;
}

// Walks one game and credits each possession to the team whose possession
// ended. A possession ends on a made field goal (after the and-one free
// throw when one follows), a defensive rebound, a turnover, a made final
// free throw, or the end of a period while the ball is live.
class PossessionCounter {
 public:
  PossessionCounter(const GameLog& log, CountOptions opts)
      : log_(log), opts_(opts) {
    for (const auto& team : {log.home_team, log.away_team}) {
      if (!team.empty()) tally_.teams[team];
    }
  }

  PossessionTally run() {
    for (std::size_t i = 0; i < log_.events.size(); ++i) {
      index_ = i;
      const PbpEvent& ev = log_.events[i];
      std::visit([&](const auto& k) { on(ev, k); }, ev.kind);
    }
    close_period();
    return std::move(tally_);
  }

 private:
  enum class Miss { None, FieldGoal, FinalFt, AndOneFt, NonFinalFt };

  [[noreturn]] void inconsistent(const std::string& what) const {
    throw Error(ErrorCode::InconsistentStream,
                "game " + log_.game_id + ", event " +
                    std::to_string(index_ + 1) + ": " + what);
  }

  TeamTally& team(const std::string& id) { return tally_.teams[id]; }

  void credit(const std::string& id) {
    ++team(id).possessions;
    open_ = false;
  }

  void resolve_pending_end() {
    if (pending_end_) {
      pending_end_ = false;
      credit(offense_);
    }
  }

  // Common entry checks for an event that starts or continues play by `id`.
  void begin_action(const std::string& id) {
    resolve_pending_end();
    if (pending_miss_ != Miss::None) {
      inconsistent("missed shot by " + shooter_ + " was not rebounded");
    }
    if (open_ && offense_ != id) {
      inconsistent("possession of " + offense_ + " did not end before " + id +
                   " acted");
    }
    offense_ = id;
    open_ = true;
  }

  void close_period() {
    resolve_pending_end();
    if (open_) credit(offense_);
    open_ = false;
    pending_miss_ = Miss::None;
    offense_.clear();
  }

  void on(const PbpEvent& ev, const event::FieldGoal& fg) {
    begin_action(ev.team_id);
    if (fg.made) {
      pending_end_ = true;
    } else {
      pending_miss_ = Miss::FieldGoal;
      shooter_ = ev.team_id;
    }
  }

  void on(const PbpEvent& ev, const event::FreeThrow& ft) {
    TeamTally& t = team(ev.team_id);
    ++t.ft_total;
    if (ft.technical) {
      ++t.ft_technical;
      return;
    }
    if (ft.and_one) {
      ++t.ft_and_one;
      if (!pending_end_ || offense_ != ev.team_id) {
        inconsistent("and-one free throw without a made field goal by " +
                     ev.team_id);
      }
      pending_end_ = false;
      if (ft.made) {
        credit(ev.team_id);
      } else {
        pending_miss_ = Miss::AndOneFt;
        shooter_ = ev.team_id;
      }
      return;
    }

    ++t.ft_set_histogram[ft.set_size];
    // The dead-ball rebound between free throws of one set is often absent.
    if (pending_miss_ == Miss::NonFinalFt && shooter_ == ev.team_id) {
      pending_miss_ = Miss::None;
    }
    begin_action(ev.team_id);
    if (classify_free_throw(ft)) {
      ++t.ft_possession_ending;
      if (ft.made) {
        ++t.ft_possession_ending_made;
        credit(ev.team_id);
      } else {
        ++t.ft_final_missed;
        pending_miss_ = Miss::FinalFt;
        shooter_ = ev.team_id;
      }
    } else if (!ft.made) {
      pending_miss_ = Miss::NonFinalFt;
      shooter_ = ev.team_id;
    }
  }

  void on(const PbpEvent& ev, const event::Turnover&) {
    begin_action(ev.team_id);
    credit(ev.team_id);
  }

  void on(const PbpEvent& ev, const event::Rebound& rb) {
    if (pending_miss_ == Miss::None) {
      inconsistent(pending_end_ ? "rebound follows a made field goal"
                                : "rebound without a missed shot");
    }
    const Miss miss = pending_miss_;
    pending_miss_ = Miss::None;
    if (ev.team_id == shooter_) {
      if (!rb.offensive) inconsistent("shooting team rebound not offensive");
      if (counts_rebound(rb, opts_)) {
        TeamTally& t = team(ev.team_id);
        switch (miss) {
          case Miss::FieldGoal: ++t.orb_after_fg; break;
          case Miss::FinalFt:
            ++t.ft_final_missed_orb;
            ++t.orb_after_ft;
            break;
          case Miss::AndOneFt:
          case Miss::NonFinalFt: ++t.orb_after_ft; break;
          case Miss::None: break;
        }
      }
      return;
    }
    if (rb.offensive) inconsistent("defending team rebound marked offensive");
    if (miss == Miss::NonFinalFt) {
      inconsistent("defensive rebound of a non-final free throw");
    }
    credit(shooter_);
    offense_ = ev.team_id;
  }

  void on(const PbpEvent&, const event::PeriodEnd&) { close_period(); }

  const GameLog& log_;
  CountOptions opts_;
  PossessionTally tally_;
  std::size_t index_ = 0;

  std::string offense_;
  bool open_ = false;
  bool pending_end_ = false;
  Miss pending_miss_ = Miss::None;
  std::string shooter_;
};

}  // namespace

PossessionTally count_possessions(const GameLog& log, CountOptions opts) {
  return PossessionCounter(log, opts).run();
}

PossessionTally count_possessions(std::span<const GameLog> logs,
                                  CountOptions opts) {
  PossessionTally sum;
  for (const auto& log : logs) sum += count_possessions(log, opts);
  return sum;
}

double mu_from_tally(const TeamTally& tally) {
  if (tally.ft_total == 0) {
    throw Error(ErrorCode::EmptyScope, "no free throws in scope");
  }
  return static_cast<double>(tally.ft_possession_ending) /
         static_cast<double>(tally.ft_total);
}

MuEstimate estimate_mu(std::span<const GameLog> logs, MuScope scope) {
  const PossessionTally tally = count_possessions(logs);
  MuEstimate est;
  est.league = mu_from_tally(tally.total());
  if (scope == MuScope::PerTeam) {
    for (const auto& [team, t] : tally.teams) {
      if (t.ft_total > 0) est.per_team[team] = mu_from_tally(t);
    }
  }
  return est;
}

FtParams ft_params_from_tally(const TeamTally& t) {
  if (t.ft_possession_ending == 0) {
    throw Error(ErrorCode::EmptyScope, "no possession-ending free throws");
  }
  FtParams p;
  p.mu = mu_from_tally(t);
  p.beta = static_cast<double>(t.ft_possession_ending_made) /
           static_cast<double>(t.ft_possession_ending);
  p.alpha = t.ft_final_missed == 0
                ? 0.0
                : static_cast<double>(t.ft_final_missed_orb) /
                      static_cast<double>(t.ft_final_missed);
  p.epsilon = p.alpha * (1.0 - p.beta);
  return p;
}

FtParams estimate_ft_reb_params(std::span<const GameLog> logs,
                                CountOptions opts) {
  return ft_params_from_tally(count_possessions(logs, opts).total());
}

BoxScoreLine box_line_from_log(const GameLog& log, const std::string& team,
                               const std::string& season, CountOptions opts) {
  BoxScoreLine line;
  line.team_id = team;
  line.season = season;
  Count opp_drb = 0;
  for (const auto& ev : log.events) {
    const bool ours = ev.team_id == team;
    if (const auto* fg = std::get_if<event::FieldGoal>(&ev.kind)) {
      if (!ours) continue;
      ++line.fga;
      if (fg->three) ++line.tpa;
      if (fg->made) {
        ++line.fgm;
        if (fg->three) ++line.tpm;
      }
    } else if (const auto* ft = std::get_if<event::FreeThrow>(&ev.kind)) {
      if (!ours) continue;
      ++line.fta;
      if (ft->made) ++line.ftm;
    } else if (std::holds_alternative<event::Turnover>(ev.kind)) {
      if (ours) ++line.tov;
    } else if (const auto* rb = std::get_if<event::Rebound>(&ev.kind)) {
      if (!counts_rebound(*rb, opts)) continue;
      if (ours) {
        ++(rb->offensive ? line.orb : line.drb);
      } else if (!ev.team_id.empty() && !rb->offensive) {
        ++opp_drb;
      }
    }
  }
  line.pts = line.ftm + 2 * line.fgm + line.tpm;
  line.opp_drb = opp_drb;
  return line;
}

}  // namespace fourfactors
