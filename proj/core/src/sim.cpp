#include "fourfactors/sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fourfactors/error.hpp"
#include "fourfactors/ratings.hpp"

namespace fourfactors {
namespace {

class SimRng {
 public:
  explicit SimRng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 gen_;
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double miss_probability(const GenParams& p) {
  return p.p_three * (1.0 - p.p3) + (1.0 - p.p_three) * (1.0 - p.p2);
}

double mix_total(const SetMix& m) { return m.and_one + m.two + m.three; }

// Probability that a shot opportunity ends in an offensive rebound.
double continuation_probability(const GenParams& p) {
  const double total = mix_total(p.set_mix);
  const double live_sets = (p.set_mix.two + p.set_mix.three) / total;
  return (1.0 - p.p_tov) * ((1.0 - p.p_ftrip) * miss_probability(p) * p.p_orb_fg +
                            p.p_ftrip * live_sets * (1.0 - p.p_ft) * p.p_orb_ft);
}

constexpr double kPeriodSeconds = 720.0;

class GameWriter {
 public:
  GameWriter(const GenParams& params, SimRng& rng) : p_(params), rng_(rng) {}

  GameLog play(const std::string& game_id, std::int64_t per_team) {
    GameLog log;
    log.game_id = game_id;
    log.home_team = p_.team;
    log.away_team = p_.opponent;
    events_ = &log.events;
    game_id_ = game_id;

    const std::int64_t total = 2 * per_team;
    const std::int64_t periods =
        std::max<std::int64_t>(1, std::min<std::int64_t>(p_.periods, total));
    std::int64_t next = 0;
    for (std::int64_t period = 1; period <= periods; ++period) {
      const std::int64_t end = total * period / periods;
      const std::int64_t in_period = end - next;
      const double step =
          in_period > 0 ? std::floor(kPeriodSeconds / static_cast<double>(in_period)) : 0.0;
      period_ = static_cast<int>(period);
      for (std::int64_t k = 0; k < in_period; ++k, ++next) {
        clock_ = kPeriodSeconds - step * static_cast<double>(k);
        const bool home_ball = next % 2 == 0;
        possession(home_ball ? p_.team : p_.opponent,
                   home_ball ? p_.opponent : p_.team);
      }
      clock_ = 0.0;
      emit("", event::PeriodEnd{});
    }
    return log;
  }

 private:
  void emit(const std::string& team, EventKind kind) {
    events_->push_back(PbpEvent{game_id_, period_, clock_, team, std::move(kind)});
  }

  void rebound(const std::string& team, bool offensive, bool team_rebound = false) {
    emit(team, event::Rebound{offensive, team_rebound});
  }

  void possession(const std::string& off, const std::string& def) {
    const double mix = mix_total(p_.set_mix);
    while (true) {
      if (rng_.bernoulli(p_.p_tov)) {
        emit(off, event::Turnover{});
        return;
      }
      if (rng_.bernoulli(p_.p_ftrip)) {
        const double u = rng_.uniform() * mix;
        if (u < p_.set_mix.and_one) {
          const bool three = rng_.bernoulli(p_.p_three);
          emit(off, event::FieldGoal{true, three});
          const bool made = rng_.bernoulli(p_.p_ft);
          emit(off, event::FreeThrow{made, 1, 1, true, false});
          if (!made) rebound(def, false);
          return;
        }
        const int n = u < p_.set_mix.and_one + p_.set_mix.two ? 2 : 3;
        bool continues = false;
        for (int i = 1; i <= n; ++i) {
          const bool made = rng_.bernoulli(p_.p_ft);
          emit(off, event::FreeThrow{made, i, n, false, false});
          if (i < n) {
            if (!made) rebound(off, true, true);
            continue;
          }
          if (made) return;
          continues = rng_.bernoulli(p_.p_orb_ft);
          rebound(continues ? off : def, continues);
        }
        if (continues) continue;
        return;
      }
      const bool three = rng_.bernoulli(p_.p_three);
      const bool made = rng_.bernoulli(three ? p_.p3 : p_.p2);
      emit(off, event::FieldGoal{made, three});
      if (made) return;
      const bool orb = rng_.bernoulli(p_.p_orb_fg);
      rebound(orb ? off : def, orb);
      if (!orb) return;
    }
  }

  const GenParams& p_;
  SimRng& rng_;
  std::vector<PbpEvent>* events_ = nullptr;
  std::string game_id_;
  int period_ = 1;
  double clock_ = kPeriodSeconds;
};

std::string game_name(std::size_t index) {
  std::string digits = std::to_string(index + 1);
  if (digits.size() < 6) digits.insert(0, 6 - digits.size(), '0');
  return "G" + digits;
}

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidParams,
                std::string(name) + " must lie in [0, 1]");
  }
}

}  // namespace

void validate(const GenParams& p) {
  require_probability(p.p_tov, "p_tov");
  require_probability(p.p_three, "p_three");
  require_probability(p.p2, "p2");
  require_probability(p.p3, "p3");
  require_probability(p.p_ftrip, "p_ftrip");
  require_probability(p.p_ft, "p_ft");
  require_probability(p.p_orb_fg, "p_orb_fg");
  require_probability(p.p_orb_ft, "p_orb_ft");
  const auto& m = p.set_mix;
  if (!(m.and_one >= 0.0 && m.two >= 0.0 && m.three >= 0.0) ||
      !(mix_total(m) > 0.0)) {
    throw Error(ErrorCode::InvalidParams,
                "set mix weights must be >= 0 with a positive sum");
  }
  if (p.n_possessions < 0) {
    throw Error(ErrorCode::InvalidParams, "n_possessions must be >= 0");
  }
  if (p.possessions_per_game < 1 || p.periods < 1) {
    throw Error(ErrorCode::InvalidParams,
                "possessions_per_game and periods must be positive");
  }
  if (p.team.empty() || p.opponent.empty() || p.team == p.opponent) {
    throw Error(ErrorCode::InvalidParams, "team names must be distinct");
  }
  if (!(continuation_probability(p) < 1.0 - 1e-12)) {
    throw Error(ErrorCode::InvalidParams, "possessions would never end");
  }
}

std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x5DEECE66DULL));
}

SimResult simulate(const GenParams& params) {
  validate(params);
  SimRng rng(params.seed);
  GameWriter writer(params, rng);

  SimResult out;
  out.line.team_id = params.team;
  out.line.season = params.season;
  out.line.opp_drb = 0;
  out.opp_line.team_id = params.opponent;
  out.opp_line.season = params.season;
  out.opp_line.opp_drb = 0;

  std::int64_t remaining = params.n_possessions;
  while (remaining > 0) {
    const std::int64_t per_team =
        std::min<std::int64_t>(remaining, params.possessions_per_game);
    out.games.push_back(writer.play(game_name(out.games.size()), per_team));
    remaining -= per_team;
    const GameLog& g = out.games.back();
    out.line += box_line_from_log(g, params.team, params.season);
    out.opp_line += box_line_from_log(g, params.opponent, params.season);
  }
  return out;
}

ExpectedStats expected_stats(const GenParams& p) {
  validate(p);
  const double keep = 1.0 - p.p_tov;
  const double shot = keep * (1.0 - p.p_ftrip);
  const double trip = keep * p.p_ftrip;
  const double total = mix_total(p.set_mix);
  const double a = p.set_mix.and_one / total;
  const double b = p.set_mix.two / total;
  const double c = p.set_mix.three / total;
  const double miss = miss_probability(p);

  const double fga = shot + trip * a;
  const double fgm = shot * (1.0 - miss) + trip * a;
  const double tpm = shot * p.p_three * p.p3 + trip * a * p.p_three;
  const double fta = trip * (a + 2.0 * b + 3.0 * c);
  const double ftm = p.p_ft * fta;
  const double q = continuation_probability(p);

  ExpectedStats e;
  e.efg = (fgm + 0.5 * tpm) / fga;
  e.ftr = ftm / fga;
  e.orb_pct = q / (fga - fgm);
  e.opportunities_per_possession = 1.0 / (1.0 - q);
  e.tov_pct = p.p_tov * e.opportunities_per_possession;
  e.fg_pct = fgm / fga;
  e.ft_pct = p.p_ft;
  e.mu = (b + c) / (a + 2.0 * b + 3.0 * c);
  e.alpha = p.p_orb_ft;
  e.beta = p.p_ft;
  e.epsilon = e.alpha * (1.0 - e.beta);
  return e;
}

EpsIdentityReport verify_eps_identity(const SimResult& result,
                                      const std::string& team) {
  const PossessionTally tally = count_possessions(result.games);
  const auto it = tally.teams.find(team);
  if (it == tally.teams.end() || it->second.ft_final_missed == 0) {
    throw Error(ErrorCode::EmptyScope,
                "no missed possession-ending free throws for " + team);
  }
  const TeamTally& t = it->second;
  const BoxScoreLine& line = team == result.opp_line.team_id ? result.opp_line
                                                             : result.line;
  EpsIdentityReport r;
  r.measured = ft_params_from_tally(t);
  const double a = r.measured.alpha;
  const double b = r.measured.beta;
  r.alpha_se = std::sqrt(a * (1.0 - a) / static_cast<double>(t.ft_final_missed));
  r.beta_se = std::sqrt(b * (1.0 - b) / static_cast<double>(t.ft_possession_ending));
  r.epsilon_se = std::sqrt((1.0 - b) * (1.0 - b) * r.alpha_se * r.alpha_se +
                           a * a * r.beta_se * r.beta_se);
  r.possessions = t.possessions;
  r.ortg_exact = static_cast<double>(line.pts) / static_cast<double>(t.possessions);
  r.ortg_box = ortg_box(line, r.measured.mu);

  TeamProfile profile = make_profile(line, r.measured.mu);
  r.orb_pct_fg_only = static_cast<double>(t.orb_after_fg) /
                      static_cast<double>(line.fga - line.fgm);
  profile.factors.orb_pct = r.orb_pct_fg_only;
  r.ortg_fg_only = ortg_factors(profile);
  r.ortg_fg_only_eps = ortg_factors_eps(profile, r.measured.epsilon);
  r.residual_base = std::abs(r.ortg_fg_only - r.ortg_exact);
  r.residual_eps = std::abs(r.ortg_fg_only_eps - r.ortg_exact);
  return r;
}

EpsIdentityReport verify_eps_identity(const GenParams& params) {
  return verify_eps_identity(simulate(params), params.team);
}

std::vector<IdentityCheck> verify_identities(const GenParams& params,
                                             const SimResult& result) {
  std::vector<IdentityCheck> checks;
  const PossessionTally tally = count_possessions(result.games);
  const TeamTally& t = tally.teams.at(params.team);

  const double count_gap = std::abs(static_cast<double>(t.possessions) -
                                    static_cast<double>(params.n_possessions));
  checks.push_back({"possession count", count_gap, 0.0, count_gap == 0.0});

  if (t.ft_total > 0 && t.possessions > 0) {
    const double mu = mu_from_tally(t);
    const double exact =
        static_cast<double>(result.line.pts) / static_cast<double>(t.possessions);
    const double gap = std::abs(ortg_factors(make_profile(result.line, mu)) - exact);
    checks.push_back({"closed form vs exact possessions", gap, 1e-9, gap < 1e-9});
  }

  if (params.p_orb_ft > 0.0 && t.ft_final_missed > 0) {
    const auto r = verify_eps_identity(result, params.team);
    checks.push_back({"epsilon-corrected closed form", r.residual_eps, 1e-9,
                      r.residual_eps < 1e-9});
  }
  return checks;
}

}  // namespace fourfactors
