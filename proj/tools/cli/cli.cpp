#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fourfactors/fourfactors.hpp"
#include "report.hpp"

#ifndef FOURFACTORS_VERSION
#define FOURFACTORS_VERSION "0.0.0"
#endif

namespace fourfactors::cli {
namespace {

// ---------------------------------------------------------------------------
// Config

std::string trim(std::string s) {
  const auto ws = " \t\r";
  s.erase(0, s.find_first_not_of(ws));
  const auto end = s.find_last_not_of(ws);
  s.erase(end == std::string::npos ? 0 : end + 1);
  return s;
}

[[noreturn]] void config_error(const std::string& what, std::size_t line = 0) {
  throw Error(ErrorCode::ConfigError, what, line);
}

bool parse_bool(const std::string& v, std::size_t line) {
  if (v == "1" || v == "true") return true;
  if (v == "0" || v == "false") return false;
  config_error("expected boolean, got '" + v + "'", line);
}

}  // namespace

Config parse_config(std::istream& in) {
  Config cfg;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    raw = trim(raw);
    if (raw.empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string::npos) config_error("expected key=value", line);
    const std::string key = trim(raw.substr(0, eq));
    const std::string value = trim(raw.substr(eq + 1));
    try {
      if (key == "mu_default") {
        std::size_t used = 0;
        cfg.mu_default = std::stod(value, &used);
        if (used != value.size()) config_error("bad number '" + value + "'", line);
        if (!(cfg.mu_default > 0.0 && cfg.mu_default <= 1.0)) {
          config_error("mu_default must lie in (0, 1]", line);
        }
      } else if (key == "mu_source") {
        if (value == "literal") cfg.mu_source = MuSource::Literal;
        else if (value == "estimated") cfg.mu_source = MuSource::Estimated;
        else config_error("mu_source must be literal or estimated", line);
      } else if (key == "per100") {
        cfg.per100 = parse_bool(value, line);
      } else if (key == "data_dir") {
        cfg.data_dir = value;
      } else if (key == "output_format") {
        if (value == "csv") cfg.output_format = OutputFormat::Csv;
        else if (value == "json") cfg.output_format = OutputFormat::Json;
        else config_error("output_format must be csv or json", line);
      } else if (key == "seed") {
        std::size_t used = 0;
        cfg.seed = std::stoull(value, &used);
        if (used != value.size()) config_error("bad seed '" + value + "'", line);
      } else {
        config_error("unknown key '" + key + "'", line);
      }
    } catch (const std::logic_error&) {
      config_error("bad value for " + key + ": '" + value + "'", line);
    }
  }
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  return parse_config(in);
}

namespace {

// ---------------------------------------------------------------------------
// Tabular output shared by the subcommands.

using Cell = std::variant<std::monostate, std::string, double, Count>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    out << (i ? "," : "") << t.columns[i];
  }
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) out << v;
            else if constexpr (std::is_same_v<T, double>) out << fixed6(v);
            else if constexpr (std::is_same_v<T, Count>) out << v;
          },
          row[i]);
    }
    out << '\n';
  }
}

nlohmann::ordered_json to_json(const Table& t) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) obj[t.columns[i]] = nullptr;
            else if constexpr (std::is_same_v<T, double>) obj[t.columns[i]] = round6(v);
            else obj[t.columns[i]] = v;
          },
          row[i]);
    }
    arr.push_back(std::move(obj));
  }
  return arr;
}

// ---------------------------------------------------------------------------

struct Options {
  std::string box;
  std::string opp_box;
  std::string pbp;
  std::optional<double> mu;
  bool per100 = false;
  std::string season;
  std::string team;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string config;

  std::string params;
  std::optional<std::int64_t> n;
  bool verify = false;
  std::string dump_pbp;
  std::string dump_box;
  std::string curves;
  std::optional<double> scale;
};

struct Context {
  Options opts;
  Config cfg;
  std::ostream& out;

  bool per100() const { return opts.per100 || cfg.per100; }

  OutputFormat format() const {
    if (opts.format.empty()) return cfg.output_format;
    if (opts.format == "csv") return OutputFormat::Csv;
    if (opts.format == "json") return OutputFormat::Json;
    throw Error(ErrorCode::ConfigError, "--format must be csv or json");
  }

  std::filesystem::path resolve(const std::string& p) const {
    std::filesystem::path path(p);
    if (path.is_relative() && !cfg.data_dir.empty()) return cfg.data_dir / path;
    return path;
  }

  double rating(double r) const { return per100() ? per100_scale(r) : r; }
  static double per100_scale(double r) { return fourfactors::per100(r); }
};

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("cannot write " + path.string());
}

void emit(const Context& ctx, const std::string& text) {
  if (ctx.opts.out.empty()) {
    ctx.out << text;
  } else {
    write_text(ctx.opts.out, text);
  }
}

void emit_table(const Context& ctx, const Table& t) {
  std::ostringstream ss;
  if (ctx.format() == OutputFormat::Json) {
    ss << to_json(t).dump(2) << '\n';
  } else {
    write_csv(ss, t);
  }
  emit(ctx, ss.str());
}

std::vector<BoxScoreLine> load_box(const Context& ctx, const std::string& path) {
  return parse_box_scores(read_text(ctx.resolve(path)));
}

std::vector<GameLog> load_pbp(const Context& ctx) {
  return parse_pbp(read_text(ctx.resolve(ctx.opts.pbp)));
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) {
    throw Error(ErrorCode::ConfigError, std::string(flag) + " is required");
  }
}

struct MuChoice {
  double mu;
  std::string source;
};

MuChoice resolve_mu(const Context& ctx, const std::vector<GameLog>* logs) {
  if (ctx.opts.mu) {
    if (!(*ctx.opts.mu >= 0.0 && *ctx.opts.mu <= 1.0)) {
      throw Error(ErrorCode::ConfigError, "--mu must lie in [0, 1]");
    }
    return {*ctx.opts.mu, "flag"};
  }
  if (ctx.cfg.mu_source == MuSource::Estimated && logs != nullptr) {
    return {estimate_mu(*logs).league, "pbp"};
  }
  return {ctx.cfg.mu_default, "config"};
}

// Filters by --season and --team. With `single_season`, the remaining lines
// must share one season.
std::vector<BoxScoreLine> select(const Context& ctx,
                                 const std::vector<BoxScoreLine>& lines,
                                 bool single_season, bool apply_team = true) {
  std::vector<BoxScoreLine> out;
  for (const auto& l : lines) {
    if (!ctx.opts.season.empty() && l.season != ctx.opts.season) continue;
    if (apply_team && !ctx.opts.team.empty() && l.team_id != ctx.opts.team) continue;
    out.push_back(l);
  }
  if (single_season) {
    std::set<std::string> seasons;
    for (const auto& l : out) seasons.insert(l.season);
    if (seasons.size() > 1) {
      throw Error(ErrorCode::ConfigError,
                  "input spans several seasons; choose one with --season");
    }
  }
  if (out.empty()) throw Error(ErrorCode::EmptyScope, "no matching box-score lines");
  return out;
}

std::optional<std::vector<GameLog>> maybe_pbp(const Context& ctx) {
  if (ctx.opts.pbp.empty()) return std::nullopt;
  return load_pbp(ctx);
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_factors(const Context& ctx) {
  require(ctx.opts.box, "--box");
  const auto logs = maybe_pbp(ctx);
  const auto mu = resolve_mu(ctx, logs ? &*logs : nullptr);
  Table t{{"team_id", "season", "efg", "ftr", "orb_pct", "orb_pct_exact", "tov_pct",
           "tov_pct_trad", "fg_pct", "ft_pct", "mu"},
          {}};
  for (const auto& l : select(ctx, load_box(ctx, ctx.opts.box), false)) {
    const auto f = four_factors(l, mu.mu);
    const auto s = shooting_pct(l);
    Cell exact;
    if (l.opp_drb) exact = orb_pct_exact(l);
    t.rows.push_back({l.team_id, l.season, f.efg, f.ftr, f.orb_pct, exact, f.tov_pct,
                      tov_pct_trad(l, mu.mu), s.fg_pct, s.ft_pct, mu.mu});
  }
  emit_table(ctx, t);
  return kExitOk;
}

int cmd_ratings(const Context& ctx) {
  require(ctx.opts.box, "--box");
  const auto logs = maybe_pbp(ctx);
  const auto mu = resolve_mu(ctx, logs ? &*logs : nullptr);
  std::map<std::pair<std::string, std::string>, BoxScoreLine> opp;
  if (!ctx.opts.opp_box.empty()) {
    for (auto& o : load_box(ctx, ctx.opts.opp_box)) {
      opp[{o.team_id, o.season}] = o;
    }
  }
  std::optional<PossessionTally> tally;
  if (logs) tally = count_possessions(*logs);

  Table t{{"team_id", "season", "mu", "possessions", "ortg_box", "ortg_factors",
           "drtg", "net", "possessions_exact", "ortg_exact"},
          {}};
  for (const auto& l : select(ctx, load_box(ctx, ctx.opts.box), false)) {
    const double ortg = ortg_box(l, mu.mu);
    Cell drtg, net, poss_exact, ortg_exact;
    if (auto it = opp.find({l.team_id, l.season}); it != opp.end()) {
      const Ratings r = net_box(l, it->second, mu.mu);
      drtg = ctx.rating(r.drtg);
      net = ctx.rating(r.net);
    }
    if (tally) {
      if (auto it = tally->teams.find(l.team_id);
          it != tally->teams.end() && it->second.possessions > 0) {
        poss_exact = it->second.possessions;
        ortg_exact = ctx.rating(static_cast<double>(l.pts) /
                                static_cast<double>(it->second.possessions));
      }
    }
    t.rows.push_back({l.team_id, l.season, mu.mu, estimate_possessions(l, mu.mu),
                      ctx.rating(ortg), ctx.rating(ortg_factors(make_profile(l, mu.mu))),
                      drtg, net, poss_exact, ortg_exact});
  }
  emit_table(ctx, t);
  return kExitOk;
}

int cmd_decompose(const Context& ctx) {
  require(ctx.opts.box, "--box");
  const auto logs = maybe_pbp(ctx);
  const auto mu = resolve_mu(ctx, logs ? &*logs : nullptr);
  Table t{{"team_id", "season", "xposs", "xshot", "xeff", "xvol", "ortg"}, {}};
  const bool scaled = ctx.opts.scale.has_value();
  if (scaled) {
    for (const char* c : {"ortg_scaled_xposs", "ortg_scaled_xshot",
                          "ortg_scaled_xeff", "ortg_scaled_all"}) {
      t.columns.push_back(c);
    }
  }
  for (const auto& l : select(ctx, load_box(ctx, ctx.opts.box), false)) {
    const auto m = multipliers(make_profile(l, mu.mu));
    std::vector<Cell> row{l.team_id, l.season, m.xposs, m.xshot, m.xeff, m.xvol,
                          ctx.rating(m.ortg())};
    if (scaled) {
      const double k = *ctx.opts.scale;
      row.push_back(ctx.rating(scale_experiment(m, Component::XPoss, k)));
      row.push_back(ctx.rating(scale_experiment(m, Component::XShot, k)));
      row.push_back(ctx.rating(scale_experiment(m, Component::XEff, k)));
      row.push_back(ctx.rating(scale_all(m, std::cbrt(k))));
    }
    t.rows.push_back(std::move(row));
  }
  emit_table(ctx, t);
  return kExitOk;
}

void write_curves(const std::filesystem::path& path, const TeamProfile& ref) {
  std::ostringstream ss;
  ss << "factor,x,ortg,d_efg,d_ftr,d_orb,d_tov\n";
  const char* names[] = {"efg", "ftr", "orb_pct", "tov_pct"};
  for (std::size_t i = 0; i < 4; ++i) {
    for (int step = 0; step <= 100; ++step) {
      TeamProfile p = ref;
      const double x = step / 100.0;
      switch (i) {
        case kEfg: p.factors.efg = x; break;
        case kFtr: p.factors.ftr = x; break;
        case kOrb: p.factors.orb_pct = x; break;
        default: p.factors.tov_pct = x; break;
      }
      try {
        const auto g = ortg_gradient(p);
        ss << names[i] << ',' << fixed6(x) << ',' << fixed6(ortg_factors(p)) << ','
           << fixed6(g.d_efg) << ',' << fixed6(g.d_ftr) << ',' << fixed6(g.d_orb)
           << ',' << fixed6(g.d_tov) << '\n';
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateDenominator) throw;
      }
    }
  }
  write_text(path, ss.str());
}

int cmd_sensitivity(const Context& ctx) {
  require(ctx.opts.box, "--box");
  const auto logs = maybe_pbp(ctx);
  const auto mu = resolve_mu(ctx, logs ? &*logs : nullptr);
  const auto lines = select(ctx, load_box(ctx, ctx.opts.box), true, false);
  std::vector<TeamProfile> profiles;
  for (const auto& l : lines) profiles.push_back(make_profile(l, mu.mu));
  const SeasonReference ref = season_reference(profiles);

  Table t{{"team_id", "d_efg", "d_ftr", "d_orb", "d_tov", "nd_efg", "nd_ftr", "nd_orb",
           "nd_tov", "ws_efg", "ws_ftr", "ws_orb", "ws_tov", "crossover_efg"},
          {}};
  auto add_row = [&](const std::string& team, const TeamProfile& p) {
    const auto g = ortg_gradient(p);
    std::vector<Cell> row{team, g.d_efg, g.d_ftr, g.d_orb, g.d_tov};
    for (double w : normalized_derivatives(g)) row.push_back(w);
    try {
      for (double w : weighted_sensitivities(g, ref.distribution)) row.push_back(w);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ZeroGradient) throw;
      row.insert(row.end(), 4, std::monostate{});
    }
    try {
      row.push_back(crossover_efg(p));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoCrossover) throw;
      row.push_back(std::monostate{});
    }
    t.rows.push_back(std::move(row));
  };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!ctx.opts.team.empty() && lines[i].team_id != ctx.opts.team) continue;
    add_row(lines[i].team_id, profiles[i]);
  }
  if (!ctx.opts.team.empty() && t.rows.empty()) {
    throw Error(ErrorCode::EmptyScope, "team " + ctx.opts.team + " not found");
  }
  add_row("LEAGUE", ref.reference);
  if (!ctx.opts.curves.empty()) write_curves(ctx.opts.curves, ref.reference);
  emit_table(ctx, t);
  return kExitOk;
}

int cmd_estimate_mu(const Context& ctx) {
  require(ctx.opts.pbp, "--pbp");
  const auto logs = load_pbp(ctx);
  const PossessionTally tally = count_possessions(logs);
  Table t{{"team_id", "ft_total", "ft_possession_ending", "mu", "alpha", "beta",
           "epsilon"},
          {}};
  auto add_row = [&](const std::string& team, const TeamTally& tt) {
    std::vector<Cell> row{team, tt.ft_total, tt.ft_possession_ending};
    if (tt.ft_total == 0) {
      row.insert(row.end(), 4, std::monostate{});
    } else if (tt.ft_possession_ending == 0) {
      row.push_back(mu_from_tally(tt));
      row.insert(row.end(), 3, std::monostate{});
    } else {
      const FtParams p = ft_params_from_tally(tt);
      row.insert(row.end(), {p.mu, p.alpha, p.beta, p.epsilon});
    }
    t.rows.push_back(std::move(row));
  };
  const TeamTally total = tally.total();
  mu_from_tally(total);  // EmptyScope when the stream has no free throws
  add_row("LEAGUE", total);
  for (const auto& [team, tt] : tally.teams) {
    if (!ctx.opts.team.empty() && team != ctx.opts.team) continue;
    add_row(team, tt);
  }
  emit_table(ctx, t);
  return kExitOk;
}

GenParams load_params(const Context& ctx) {
  GenParams p;
  std::optional<std::uint64_t> file_seed;
  if (!ctx.opts.params.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_text(ctx.resolve(ctx.opts.params)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidParams, std::string("params: ") + e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::InvalidParams, "params must be an object");
    try {
      for (const auto& [key, v] : j.items()) {
        if (key == "p_tov") p.p_tov = v.get<double>();
        else if (key == "p_three") p.p_three = v.get<double>();
        else if (key == "p2") p.p2 = v.get<double>();
        else if (key == "p3") p.p3 = v.get<double>();
        else if (key == "p_ftrip") p.p_ftrip = v.get<double>();
        else if (key == "p_ft") p.p_ft = v.get<double>();
        else if (key == "p_orb_fg") p.p_orb_fg = v.get<double>();
        else if (key == "p_orb_ft") p.p_orb_ft = v.get<double>();
        else if (key == "seed") file_seed = v.get<std::uint64_t>();
        else if (key == "n_possessions") p.n_possessions = v.get<std::int64_t>();
        else if (key == "possessions_per_game") p.possessions_per_game = v.get<int>();
        else if (key == "periods") p.periods = v.get<int>();
        else if (key == "team") p.team = v.get<std::string>();
        else if (key == "opponent") p.opponent = v.get<std::string>();
        else if (key == "season") p.season = v.get<std::string>();
        else if (key == "set_mix") {
          p.set_mix.and_one = v.at("and_one").get<double>();
          p.set_mix.two = v.at("two").get<double>();
          p.set_mix.three = v.at("three").get<double>();
        } else {
          throw Error(ErrorCode::InvalidParams, "unknown parameter '" + key + "'");
        }
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidParams, std::string("params: ") + e.what());
    }
  }
  p.seed = ctx.opts.seed ? *ctx.opts.seed : file_seed ? *file_seed : ctx.cfg.seed;
  if (ctx.opts.n) p.n_possessions = *ctx.opts.n;
  return p;
}

int cmd_simulate(const Context& ctx) {
  const GenParams params = load_params(ctx);
  const SimResult sim = simulate(params);
  if (!ctx.opts.dump_pbp.empty()) {
    std::ostringstream ss;
    write_pbp(ss, sim.games);
    write_text(ctx.resolve(ctx.opts.dump_pbp), ss.str());
  }
  if (!ctx.opts.dump_box.empty()) {
    std::ostringstream ss;
    write_box_scores(ss, {sim.line, sim.opp_line});
    write_text(ctx.resolve(ctx.opts.dump_box), ss.str());
  }

  const PossessionTally tally = count_possessions(sim.games);
  const TeamTally& tt = tally.teams.at(params.team);
  const ExpectedStats e = expected_stats(params);
  const double mu = tt.ft_total > 0 ? mu_from_tally(tt) : 0.0;
  const TeamProfile prof = make_profile(sim.line, mu);

  Table metrics{{"metric", "measured", "expected"}, {}};
  metrics.rows.push_back({std::string("possessions"),
                          static_cast<double>(tt.possessions),
                          static_cast<double>(params.n_possessions)});
  auto add = [&](const char* name, double measured, double expected) {
    metrics.rows.push_back({std::string(name), measured, expected});
  };
  add("efg", prof.factors.efg, e.efg);
  add("ftr", prof.factors.ftr, e.ftr);
  add("orb_pct", prof.factors.orb_pct, e.orb_pct);
  add("tov_pct", prof.factors.tov_pct, e.tov_pct);
  add("fg_pct", prof.shooting.fg_pct, e.fg_pct);
  add("ft_pct", prof.shooting.ft_pct, e.ft_pct);
  add("mu", mu, e.mu);
  if (tt.ft_possession_ending > 0) {
    const FtParams fp = ft_params_from_tally(tt);
    add("alpha", fp.alpha, e.alpha);
    add("beta", fp.beta, e.beta);
    add("epsilon", fp.epsilon, e.epsilon);
  }
  metrics.rows.push_back({std::string("ortg_exact"),
                          ctx.rating(static_cast<double>(sim.line.pts) /
                                     static_cast<double>(tt.possessions)),
                          std::monostate{}});

  std::vector<IdentityCheck> checks;
  bool ok = true;
  if (ctx.opts.verify) {
    checks = verify_identities(params, sim);
    for (const auto& c : checks) ok = ok && c.passed;
  }

  std::ostringstream ss;
  if (ctx.format() == OutputFormat::Json) {
    nlohmann::ordered_json j;
    j["seed"] = params.seed;
    j["simulator_version"] = kSimulatorVersion;
    j["metrics"] = to_json(metrics);
    if (ctx.opts.verify) {
      j["checks"] = nlohmann::ordered_json::array();
      for (const auto& c : checks) {
        j["checks"].push_back({{"name", c.name},
                               {"value", c.value},
                               {"tolerance", c.tolerance},
                               {"passed", c.passed}});
      }
    }
    ss << j.dump(2) << '\n';
  } else {
    write_csv(ss, metrics);
    if (ctx.opts.verify) {
      ss << '\n' << "check,value,tolerance,status\n";
      for (const auto& c : checks) {
        char value[32];
        std::snprintf(value, sizeof(value), "%.3e", c.value);
        char tol[32];
        std::snprintf(tol, sizeof(tol), "%.0e", c.tolerance);
        ss << c.name << ',' << value << ',' << tol << ','
           << (c.passed ? "PASS" : "FAIL") << '\n';
      }
    }
  }
  emit(ctx, ss.str());
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_report(const Context& ctx) {
  require(ctx.opts.box, "--box");
  const auto logs = maybe_pbp(ctx);
  const auto mu = resolve_mu(ctx, logs ? &*logs : nullptr);
  const auto lines = select(ctx, load_box(ctx, ctx.opts.box), true, false);
  std::vector<BoxScoreLine> opponents;
  if (!ctx.opts.opp_box.empty()) {
    for (auto& o : load_box(ctx, ctx.opts.opp_box)) {
      if (o.season == lines.front().season) opponents.push_back(std::move(o));
    }
  }
  ReportMeta meta{lines.front().season, mu.mu, mu.source, FOURFACTORS_VERSION,
                  ctx.per100()};
  const Report report = build_report(lines, opponents, std::move(meta));
  if (!ctx.opts.curves.empty()) write_curves(ctx.opts.curves, report.league.profile);

  std::ostringstream ss;
  if (ctx.format() == OutputFormat::Json) {
    write_report_json(ss, report);
  } else {
    write_report_csv(ss, report);
  }
  emit(ctx, ss.str());
  return kExitOk;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--mu", o.mu, "Possession-ending free throw share");
  sub->add_flag("--per-100", o.per100, "Report ratings per 100 possessions");
  sub->add_option("--season", o.season, "Season filter, e.g. 2022-23");
  sub->add_option("--team", o.team, "Team filter");
  sub->add_option("--format", o.format, "csv or json");
  sub->add_option("--seed", o.seed, "RNG seed");
  sub->add_option("--out", o.out, "Write output to this path");
  sub->add_option("--config", o.config, "key=value config file");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Four-factor efficiency ratings and sensitivity analysis", "ffstat"};
  app.set_version_flag("--version", FOURFACTORS_VERSION);
  app.require_subcommand(1);

  Options o;
  auto* factors = app.add_subcommand("factors", "Four factors and shooting percentages");
  auto* ratings = app.add_subcommand("ratings", "Offensive, defensive and net ratings");
  auto* decompose = app.add_subcommand("decompose", "xPOSS, xSHOT, xEFF, xVOL multipliers");
  auto* sensitivity = app.add_subcommand("sensitivity", "Rating gradients and importance weights");
  auto* estimate = app.add_subcommand("estimate-mu", "Free-throw parameters from play-by-play");
  auto* simulate_cmd = app.add_subcommand("simulate", "Seeded possession simulator");
  auto* report = app.add_subcommand("report", "Full per-season report");

  for (auto* sub : {factors, ratings, decompose, sensitivity, estimate, simulate_cmd, report}) {
    add_common(sub, o);
  }
  for (auto* sub : {factors, ratings, decompose, sensitivity, report}) {
    sub->add_option("--box", o.box, "Box-score CSV");
    sub->add_option("--pbp", o.pbp, "Play-by-play CSV (used to estimate mu)");
  }
  estimate->add_option("--pbp", o.pbp, "Play-by-play CSV");
  for (auto* sub : {ratings, report}) {
    sub->add_option("--opp-box", o.opp_box, "Opponent aggregate box-score CSV");
  }
  decompose->add_option("--scale", o.scale, "Scale factor for the multiplier experiment");
  for (auto* sub : {sensitivity, report}) {
    sub->add_option("--curves", o.curves, "Write rating/derivative curves CSV");
  }
  simulate_cmd->add_option("--params", o.params, "Generator parameters (JSON)");
  simulate_cmd->add_option("--n", o.n, "Possessions per team");
  simulate_cmd->add_flag("--verify", o.verify, "Check the closed-form identities");
  simulate_cmd->add_option("--dump-pbp", o.dump_pbp, "Write the event stream as CSV");
  simulate_cmd->add_option("--dump-box", o.dump_box, "Write the box-score lines as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    Context ctx{o, o.config.empty() ? Config{} : load_config(o.config), out};
    if (factors->parsed()) return cmd_factors(ctx);
    if (ratings->parsed()) return cmd_ratings(ctx);
    if (decompose->parsed()) return cmd_decompose(ctx);
    if (sensitivity->parsed()) return cmd_sensitivity(ctx);
    if (estimate->parsed()) return cmd_estimate_mu(ctx);
    if (simulate_cmd->parsed()) return cmd_simulate(ctx);
    if (report->parsed()) return cmd_report(ctx);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const IoError& e) {
    err << "error: IoError: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitInvalid;
}

}  // namespace fourfactors::cli
