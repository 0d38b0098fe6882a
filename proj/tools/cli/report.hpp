#pragma once

// Per-season report assembly and its CSV/JSON encodings.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fourfactors/decompose.hpp"
#include "fourfactors/ingest.hpp"
#include "fourfactors/sensitivity.hpp"

namespace fourfactors::cli {

struct TeamRecord {
  std::string team_id;
  TeamProfile profile;
  double ortg_box = 0.0;
  double ortg_factors = 0.0;
  std::optional<double> drtg;
  std::optional<double> net;
  OrtgMultipliers multipliers;
  Gradient4 gradient;
  FactorWeights normalized{};
  std::optional<FactorWeights> weighted;
};

struct ReportMeta {
  std::string season;
  double mu = 0.0;
  std::string mu_source;  // flag | pbp | config
  std::string tool_version;
  bool per100 = false;
};

struct Report {
  ReportMeta meta;
  std::vector<TeamRecord> teams;
  TeamRecord league;  // profile is season_reference of the team profiles
  SeasonDistribution distribution;
};

// `opponents` holds, per team_id, the aggregate of what opponents did
// against that team; teams without an entry get no drtg/net.
Report build_report(const std::vector<BoxScoreLine>& lines,
                    const std::vector<BoxScoreLine>& opponents,
                    ReportMeta meta);

void write_report_csv(std::ostream& out, const Report& report);
void write_report_json(std::ostream& out, const Report& report);

// Reads write_report_csv output back (numeric payload at 6 decimals).
Report parse_report_csv(std::istream& in);

// Rounds to the 6 decimals used by every numeric output.
double round6(double x);
std::string fixed6(double x);

}  // namespace fourfactors::cli
