#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fourfactors/error.hpp"
#include "fourfactors/ratings.hpp"

namespace fourfactors::cli {

double round6(double x) {
  const double r = std::round(x * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

namespace {

TeamRecord make_record(const std::string& team, const TeamProfile& profile,
                       double ortg_box, const SeasonDistribution* dist) {
  TeamRecord r;
  r.team_id = team;
  r.profile = profile;
  r.ortg_box = ortg_box;
  r.ortg_factors = ortg_factors(profile);
  r.multipliers = multipliers(profile);
  r.gradient = ortg_gradient(profile);
  r.normalized = normalized_derivatives(r.gradient);
  if (dist != nullptr) {
    try {
      r.weighted = weighted_sensitivities(r.gradient, *dist);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ZeroGradient) throw;
    }
  }
  return r;
}

constexpr const char* kColumns[] = {
    "row",    "team_id", "efg",   "ftr",   "orb_pct", "tov_pct", "fg_pct",
    "ft_pct", "mu",      "ortg_box", "ortg_factors", "drtg", "net", "xposs",
    "xshot",  "xeff",    "xvol",  "d_efg", "d_ftr",   "d_orb",   "d_tov",
    "nd_efg", "nd_ftr",  "nd_orb", "nd_tov", "ws_efg", "ws_ftr", "ws_orb",
    "ws_tov"};

struct Scaled {
  double factor;
  double operator()(double rating) const { return rating * factor; }
};

void write_row(std::ostream& out, const char* kind, const TeamRecord& r,
               bool per100) {
  const Scaled scale{per100 ? 100.0 : 1.0};
  const auto& f = r.profile.factors;
  const auto& m = r.multipliers;
  const auto& g = r.gradient;
  out << kind << ',' << r.team_id;
  for (double v : {f.efg, f.ftr, f.orb_pct, f.tov_pct, r.profile.shooting.fg_pct,
                   r.profile.shooting.ft_pct, r.profile.mu, scale(r.ortg_box),
                   scale(r.ortg_factors)}) {
    out << ',' << fixed6(v);
  }
  out << ',';
  if (r.drtg) out << fixed6(scale(*r.drtg));
  out << ',';
  if (r.net) out << fixed6(scale(*r.net));
  for (double v : {m.xposs, m.xshot, m.xeff, m.xvol, g.d_efg, g.d_ftr, g.d_orb,
                   g.d_tov}) {
    out << ',' << fixed6(v);
  }
  for (double v : r.normalized) out << ',' << fixed6(v);
  for (std::size_t i = 0; i < 4; ++i) {
    out << ',';
    if (r.weighted) out << fixed6((*r.weighted)[i]);
  }
  out << '\n';
}

nlohmann::ordered_json weights_json(const FactorWeights& w) {
  return {{"efg", round6(w[0])}, {"ftr", round6(w[1])}, {"orb_pct", round6(w[2])},
          {"tov_pct", round6(w[3])}};
}

nlohmann::ordered_json record_json(const TeamRecord& r, bool per100) {
  const Scaled scale{per100 ? 100.0 : 1.0};
  const auto& f = r.profile.factors;
  nlohmann::ordered_json j;
  j["team_id"] = r.team_id;
  j["factors"] = {{"efg", round6(f.efg)},
                  {"ftr", round6(f.ftr)},
                  {"orb_pct", round6(f.orb_pct)},
                  {"tov_pct", round6(f.tov_pct)}};
  j["shooting"] = {{"fg_pct", round6(r.profile.shooting.fg_pct)},
                   {"ft_pct", round6(r.profile.shooting.ft_pct)}};
  j["mu"] = round6(r.profile.mu);
  j["ratings"] = {{"ortg_box", round6(scale(r.ortg_box))},
                  {"ortg_factors", round6(scale(r.ortg_factors))},
                  {"drtg", r.drtg ? nlohmann::ordered_json(round6(scale(*r.drtg)))
                                  : nlohmann::ordered_json()},
                  {"net", r.net ? nlohmann::ordered_json(round6(scale(*r.net)))
                                : nlohmann::ordered_json()}};
  j["multipliers"] = {{"xposs", round6(r.multipliers.xposs)},
                      {"xshot", round6(r.multipliers.xshot)},
                      {"xeff", round6(r.multipliers.xeff)},
                      {"xvol", round6(r.multipliers.xvol)}};
  j["gradient"] = {{"efg", round6(r.gradient.d_efg)},
                   {"ftr", round6(r.gradient.d_ftr)},
                   {"orb_pct", round6(r.gradient.d_orb)},
                   {"tov_pct", round6(r.gradient.d_tov)}};
  j["normalized_derivatives"] = weights_json(r.normalized);
  j["weighted_sensitivities"] =
      r.weighted ? weights_json(*r.weighted) : nlohmann::ordered_json();
  return j;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!s.empty() && s.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

Report build_report(const std::vector<BoxScoreLine>& lines,
                    const std::vector<BoxScoreLine>& opponents,
                    ReportMeta meta) {
  if (lines.empty()) throw Error(ErrorCode::EmptyScope, "no box-score lines");
  std::map<std::string, const BoxScoreLine*> opp_by_team;
  for (const auto& o : opponents) opp_by_team[o.team_id] = &o;

  std::vector<TeamProfile> profiles;
  profiles.reserve(lines.size());
  BoxScoreLine league_line;
  league_line.team_id = "LEAGUE";
  league_line.opp_drb = 0;
  for (const auto& l : lines) {
    profiles.push_back(make_profile(l, meta.mu));
    league_line += l;
  }

  Report report;
  report.meta = std::move(meta);
  const SeasonReference ref = season_reference(profiles);
  report.distribution = ref.distribution;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    TeamRecord r = make_record(lines[i].team_id, profiles[i],
                               ortg_box(lines[i], report.meta.mu),
                               &report.distribution);
    if (auto it = opp_by_team.find(lines[i].team_id); it != opp_by_team.end()) {
      r.drtg = drtg_box(*it->second, report.meta.mu);
      r.net = r.ortg_box - *r.drtg;
    }
    report.teams.push_back(std::move(r));
  }
  report.league = make_record("LEAGUE", ref.reference,
                              ortg_box(league_line, report.meta.mu),
                              &report.distribution);
  return report;
}

void write_report_csv(std::ostream& out, const Report& report) {
  const auto& m = report.meta;
  out << "# season=" << m.season << '\n'
      << "# mu=" << fixed6(m.mu) << '\n'
      << "# mu_source=" << m.mu_source << '\n'
      << "# tool_version=" << m.tool_version << '\n'
      << "# per100=" << (m.per100 ? 1 : 0) << '\n';
  bool first = true;
  for (const char* c : kColumns) {
    out << (first ? "" : ",") << c;
    first = false;
  }
  out << '\n';
  for (const auto& r : report.teams) write_row(out, "team", r, m.per100);
  write_row(out, "league", report.league, m.per100);
}

void write_report_json(std::ostream& out, const Report& report) {
  nlohmann::ordered_json j;
  const auto& m = report.meta;
  j["metadata"] = {{"season", m.season},
                   {"mu", round6(m.mu)},
                   {"mu_source", m.mu_source},
                   {"tool_version", m.tool_version},
                   {"per100", m.per100}};
  j["teams"] = nlohmann::ordered_json::array();
  for (const auto& r : report.teams) j["teams"].push_back(record_json(r, m.per100));
  j["league"] = record_json(report.league, m.per100);
  const auto& d = report.distribution;
  auto stats = [](const FactorStats& s) {
    return nlohmann::ordered_json{{"mean", round6(s.mean)}, {"std", round6(s.std)},
                                  {"min", round6(s.min)}, {"max", round6(s.max)}};
  };
  j["distribution"] = {{"efg", stats(d.efg)}, {"ftr", stats(d.ftr)},
                       {"orb_pct", stats(d.orb)}, {"tov_pct", stats(d.tov)}};
  out << j.dump(2) << '\n';
}

Report parse_report_csv(std::istream& in) {
  Report report;
  std::string line;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2);
      const std::string value = line.substr(eq + 1);
      if (key == "season") report.meta.season = value;
      else if (key == "mu") report.meta.mu = std::stod(value);
      else if (key == "mu_source") report.meta.mu_source = value;
      else if (key == "tool_version") report.meta.tool_version = value;
      else if (key == "per100") report.meta.per100 = value == "1";
      continue;
    }
    const auto f = split(line);
    if (!header_seen) {
      header_seen = true;
      if (f.size() != std::size(kColumns)) {
        throw Error(ErrorCode::HeaderMismatch, "report header", line_no);
      }
      continue;
    }
    if (f.size() != std::size(kColumns)) {
      throw Error(ErrorCode::MalformedRow, "report row", line_no);
    }
    const double unscale = report.meta.per100 ? 0.01 : 1.0;
    auto num = [&](std::size_t i) { return std::stod(f[i]); };
    auto opt = [&](std::size_t i) -> std::optional<double> {
      if (f[i].empty()) return std::nullopt;
      return std::stod(f[i]);
    };
    TeamRecord r;
    r.team_id = f[1];
    r.profile.factors = {num(2), num(3), num(4), num(5)};
    r.profile.shooting = {num(6), num(7)};
    r.profile.mu = num(8);
    r.ortg_box = num(9) * unscale;
    r.ortg_factors = num(10) * unscale;
    if (auto v = opt(11)) r.drtg = *v * unscale;
    if (auto v = opt(12)) r.net = *v * unscale;
    r.multipliers = {num(13), num(14), num(15), num(16)};
    r.gradient = {num(17), num(18), num(19), num(20)};
    r.normalized = {num(21), num(22), num(23), num(24)};
    if (!f[25].empty()) r.weighted = FactorWeights{num(25), num(26), num(27), num(28)};
    if (f[0] == "league") {
      report.league = std::move(r);
    } else {
      report.teams.push_back(std::move(r));
    }
  }
  return report;
}

}  // namespace fourfactors::cli
