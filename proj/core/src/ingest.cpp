#include "fourfactors/ingest.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <system_error>

#include "fourfactors/error.hpp"

namespace fourfactors {
namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

// Reads lines, stripping CR and a leading UTF-8 byte order mark.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (number_ == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    return true;
  }

  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

void expect_header(LineReader& reader, std::string_view expected) {
  std::string header;
  if (!reader.next(header)) {
    throw Error(ErrorCode::HeaderMismatch, "empty input", 1);
  }
  if (header != expected) {
    throw Error(ErrorCode::HeaderMismatch,
                "expected '" + std::string(expected) + "', got '" + header + "'",
                1);
  }
}

std::vector<std::string> header_columns(std::string_view header) {
  std::vector<std::string> cols;
  for (auto f : split_fields(header)) cols.emplace_back(f);
  return cols;
}

class RowReader {
 public:
  RowReader(std::vector<std::string_view> fields,
            const std::vector<std::string>& columns, std::size_t line)
      : fields_(std::move(fields)), columns_(columns), line_(line) {
    if (fields_.size() != columns_.size()) {
      throw Error(ErrorCode::MalformedRow,
                  "expected " + std::to_string(columns_.size()) +
                      " columns, found " + std::to_string(fields_.size()),
                  line_);
    }
  }

  std::string_view raw(std::size_t col) const { return fields_[col]; }

  std::string text(std::size_t col) const { return std::string(fields_[col]); }

  template <typename Int>
  Int integer(std::size_t col) const {
    const std::string_view f = fields_[col];
    Int value{};
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
    if (f.empty() || ec != std::errc{} || ptr != f.data() + f.size()) {
      malformed(col, "not an integer: '" + std::string(f) + "'");
    }
    return value;
  }

  bool flag(std::size_t col) const {
    const std::string_view f = fields_[col];
    if (f == "0") return false;
    if (f == "1") return true;
    malformed(col, "expected 0 or 1, got '" + std::string(f) + "'");
  }

  double real(std::size_t col) const {
    const std::string_view f = fields_[col];
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
    if (f.empty() || ec != std::errc{} || ptr != f.data() + f.size() ||
        !std::isfinite(value)) {
      malformed(col, "not a number: '" + std::string(f) + "'");
    }
    return value;
  }

  void require_empty(std::size_t col, std::string_view kind) const {
    if (!fields_[col].empty()) {
      malformed(col, "must be empty for kind " + std::string(kind));
    }
  }

  [[noreturn]] void malformed(std::size_t col, const std::string& what) const {
    throw Error(ErrorCode::MalformedRow, "column " + columns_[col] + ": " + what,
                line_);
  }

  std::size_t line() const { return line_; }

 private:
  std::vector<std::string_view> fields_;
  const std::vector<std::string>& columns_;
  std::size_t line_;
};

namespace box_col {
enum : std::size_t {
  team_id, season, fga, fgm, tpa, tpm, fta, ftm, orb, drb, tov, pts, opp_drb
};
}  // namespace box_col

namespace pbp_col {
enum : std::size_t {
  game_id, period, clock_s, team_id, kind, made, three, index_in_set, set_size,
  and_one, technical, offensive, team_rebound
};
}  // namespace pbp_col

BoxScoreLine read_box_row(const RowReader& row) {
  BoxScoreLine line;
  line.team_id = row.text(box_col::team_id);
  line.season = row.text(box_col::season);
  if (line.team_id.empty()) row.malformed(box_col::team_id, "empty team_id");
  line.fga = row.integer<Count>(box_col::fga);
  line.fgm = row.integer<Count>(box_col::fgm);
  line.tpa = row.integer<Count>(box_col::tpa);
  line.tpm = row.integer<Count>(box_col::tpm);
  line.fta = row.integer<Count>(box_col::fta);
  line.ftm = row.integer<Count>(box_col::ftm);
  line.orb = row.integer<Count>(box_col::orb);
  line.drb = row.integer<Count>(box_col::drb);
  line.tov = row.integer<Count>(box_col::tov);
  line.pts = row.integer<Count>(box_col::pts);
  if (!row.raw(box_col::opp_drb).empty()) {
    line.opp_drb = row.integer<Count>(box_col::opp_drb);
  }
  return line;
}

std::string format_real(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

// Per-game ordering and structure checks, shared by the CSV reader and
// validate_game_log.
class GameValidator {
 public:
  explicit GameValidator(std::string game_id) : game_id_(std::move(game_id)) {}

  void feed(const PbpEvent& ev, std::size_t line) {
    if (ev.period < 1) {
      throw Error(ErrorCode::MalformedRow, "period must be positive", line);
    }
    if (!(ev.clock_s >= 0.0) || !std::isfinite(ev.clock_s)) {
      throw Error(ErrorCode::MalformedRow, "clock_s must be >= 0", line);
    }
    const bool is_period_end = std::holds_alternative<event::PeriodEnd>(ev.kind);
    if (!is_period_end && ev.team_id.empty()) {
      throw Error(ErrorCode::MalformedRow, "team_id required", line);
    }
    if (const auto* ft = std::get_if<event::FreeThrow>(&ev.kind)) {
      if (ft->set_size < 1 || ft->index_in_set < 1) {
        throw Error(ErrorCode::InvariantViolation,
                    "index_in_set >= 1 and set_size >= 1", line);
      }
      if (ft->index_in_set > ft->set_size) {
        throw Error(ErrorCode::DanglingFreeThrow,
                    "index_in_set " + std::to_string(ft->index_in_set) +
                        " exceeds set_size " + std::to_string(ft->set_size),
                    line);
      }
      if (ft->and_one && ft->set_size != 1) {
        throw Error(ErrorCode::InvariantViolation, "and_one implies set_size = 1",
                    line);
      }
    }
    if (!ev.team_id.empty()) {
      if (team_a_.empty() || team_a_ == ev.team_id) {
        team_a_ = ev.team_id;
      } else if (team_b_.empty() || team_b_ == ev.team_id) {
        team_b_ = ev.team_id;
      } else {
        throw Error(ErrorCode::InvariantViolation,
                    "game " + game_id_ + " has more than two teams", line);
      }
    }
    if (started_) {
      if (ev.period < period_) {
        throw Error(ErrorCode::OrderingViolation,
                    "period decreases within game " + game_id_, line);
      }
      if (ev.period == period_) {
        if (last_was_period_end_) {
          throw Error(ErrorCode::OrderingViolation,
                      "event after period_end in period " +
                          std::to_string(period_),
                      line);
        }
        if (ev.clock_s > clock_) {
          throw Error(ErrorCode::OrderingViolation,
                      "clock increases within period " + std::to_string(period_),
                      line);
        }
      } else if (!last_was_period_end_) {
        throw Error(ErrorCode::OrderingViolation,
                    "period " + std::to_string(period_) +
                        " does not end with period_end",
                    line);
      }
    }
    started_ = true;
    period_ = ev.period;
    clock_ = ev.clock_s;
    last_was_period_end_ = is_period_end;
    last_line_ = line;
  }

  void finish() const {
    if (started_ && !last_was_period_end_) {
      throw Error(ErrorCode::OrderingViolation,
                  "game " + game_id_ + " does not end with period_end",
                  last_line_);
    }
  }

  const std::string& team_a() const { return team_a_; }
  const std::string& team_b() const { return team_b_; }

 private:
  std::string game_id_;
  std::string team_a_;
  std::string team_b_;
  bool started_ = false;
  int period_ = 0;
  double clock_ = 0.0;
  bool last_was_period_end_ = false;
  std::size_t last_line_ = 0;
};

PbpEvent read_pbp_row(const RowReader& row) {
  using namespace pbp_col;
  PbpEvent ev;
  ev.game_id = row.text(game_id);
  if (ev.game_id.empty()) row.malformed(game_id, "empty game_id");
  ev.period = row.integer<int>(period);
  ev.clock_s = row.real(clock_s);
  ev.team_id = row.text(team_id);

  const std::string_view k = row.raw(kind);
  if (k == "field_goal") {
    ev.kind = event::FieldGoal{row.flag(made), row.flag(three)};
    for (auto c : {index_in_set, set_size, and_one, technical, offensive,
                   team_rebound}) {
      row.require_empty(c, k);
    }
  } else if (k == "free_throw") {
    event::FreeThrow ft;
    ft.made = row.flag(made);
    ft.index_in_set = row.integer<int>(index_in_set);
    ft.set_size = row.integer<int>(set_size);
    ft.and_one = row.flag(and_one);
    ft.technical = row.flag(technical);
    ev.kind = ft;
    for (auto c : {three, offensive, team_rebound}) row.require_empty(c, k);
  } else if (k == "turnover") {
    ev.kind = event::Turnover{};
    for (auto c : {made, three, index_in_set, set_size, and_one, technical,
                   offensive, team_rebound}) {
      row.require_empty(c, k);
    }
  } else if (k == "rebound") {
    ev.kind = event::Rebound{row.flag(offensive), row.flag(team_rebound)};
    for (auto c : {made, three, index_in_set, set_size, and_one, technical}) {
      row.require_empty(c, k);
    }
  } else if (k == "period_end") {
    ev.kind = event::PeriodEnd{};
    for (auto c : {made, three, index_in_set, set_size, and_one, technical,
                   offensive, team_rebound}) {
      row.require_empty(c, k);
    }
  } else {
    throw Error(ErrorCode::UnknownEventKind,
                "unknown kind '" + std::string(k) + "'", row.line());
  }
  return ev;
}

const char* bit(bool b) { return b ? "1" : "0"; }

}  // namespace

std::optional<std::string_view> check_invariants(const BoxScoreLine& l) {
  for (Count c : {l.fga, l.fgm, l.tpa, l.tpm, l.fta, l.ftm, l.orb, l.drb, l.tov,
                  l.pts}) {
    if (c < 0) return "counts >= 0";
  }
  if (l.opp_drb && *l.opp_drb < 0) return "counts >= 0";
  if (l.fgm > l.fga) return "fgm <= fga";
  if (l.tpm > l.tpa) return "tpm <= tpa";
  if (l.tpa > l.fga) return "tpa <= fga";
  if (l.tpm > l.fgm) return "tpm <= fgm";
  if (l.ftm > l.fta) return "ftm <= fta";
  if (l.pts != l.ftm + 2 * l.fgm + l.tpm) return "pts = ftm + 2*fgm + tpm";
  return std::nullopt;
}

BoxScoreLine& operator+=(BoxScoreLine& lhs, const BoxScoreLine& rhs) {
  lhs.fga += rhs.fga;
  lhs.fgm += rhs.fgm;
  lhs.tpa += rhs.tpa;
  lhs.tpm += rhs.tpm;
  lhs.fta += rhs.fta;
  lhs.ftm += rhs.ftm;
  lhs.orb += rhs.orb;
  lhs.drb += rhs.drb;
  lhs.tov += rhs.tov;
  lhs.pts += rhs.pts;
  if (lhs.opp_drb && rhs.opp_drb) {
    *lhs.opp_drb += *rhs.opp_drb;
  } else {
    lhs.opp_drb.reset();
  }
  return lhs;
}

std::vector<BoxScoreLine> parse_box_scores(std::istream& source) {
  LineReader reader(source);
  expect_header(reader, kBoxScoreHeader);
  const auto columns = header_columns(kBoxScoreHeader);

  std::vector<BoxScoreLine> out;
  std::string text;
  while (reader.next(text)) {
    if (text.empty()) continue;
    RowReader row(split_fields(text), columns, reader.number());
    BoxScoreLine line = read_box_row(row);
    if (auto rule = check_invariants(line)) {
      throw Error(ErrorCode::InvariantViolation, std::string(*rule),
                  reader.number());
    }
    out.push_back(std::move(line));
  }
  return out;
}

std::vector<BoxScoreLine> parse_box_scores(std::string_view source) {
  std::istringstream in{std::string(source)};
  return parse_box_scores(in);
}

void write_box_scores(std::ostream& out, const std::vector<BoxScoreLine>& lines) {
  out << kBoxScoreHeader << '\n';
  for (const auto& l : lines) {
    out << l.team_id << ',' << l.season << ',' << l.fga << ',' << l.fgm << ','
        << l.tpa << ',' << l.tpm << ',' << l.fta << ',' << l.ftm << ','
        << l.orb << ',' << l.drb << ',' << l.tov << ',' << l.pts << ',';
    if (l.opp_drb) out << *l.opp_drb;
    out << '\n';
  }
}

std::vector<GameLog> parse_pbp(std::istream& source) {
  LineReader reader(source);
  expect_header(reader, kPbpHeader);
  const auto columns = header_columns(kPbpHeader);

  std::vector<GameLog> logs;
  std::vector<GameValidator> validators;
  std::map<std::string, std::size_t, std::less<>> index;

  std::string text;
  while (reader.next(text)) {
    if (text.empty()) continue;
    RowReader row(split_fields(text), columns, reader.number());
    PbpEvent ev = read_pbp_row(row);

    auto it = index.find(ev.game_id);
    if (it == index.end()) {
      it = index.emplace(ev.game_id, logs.size()).first;
      logs.push_back(GameLog{ev.game_id, {}, {}, {}});
      validators.emplace_back(ev.game_id);
    }
    validators[it->second].feed(ev, reader.number());
    logs[it->second].events.push_back(std::move(ev));
  }
  for (std::size_t i = 0; i < logs.size(); ++i) {
    validators[i].finish();
    logs[i].home_team = validators[i].team_a();
    logs[i].away_team = validators[i].team_b();
  }
  return logs;
}

std::vector<GameLog> parse_pbp(std::string_view source) {
  std::istringstream in{std::string(source)};
  return parse_pbp(in);
}

void validate_game_log(const GameLog& log) {
  GameValidator v(log.game_id);
  for (const auto& ev : log.events) {
    if (ev.game_id != log.game_id) {
      throw Error(ErrorCode::InvariantViolation,
                  "event game_id " + ev.game_id + " in log " + log.game_id);
    }
    if (!ev.team_id.empty() && ev.team_id != log.home_team &&
        ev.team_id != log.away_team) {
      throw Error(ErrorCode::InvariantViolation,
                  "team " + ev.team_id + " not in game " + log.game_id);
    }
    v.feed(ev, 0);
  }
  v.finish();
}

std::string_view kind_name(const EventKind& kind) {
  struct Visitor {
    std::string_view operator()(const event::FieldGoal&) const { return "field_goal"; }
    std::string_view operator()(const event::FreeThrow&) const { return "free_throw"; }
    std::string_view operator()(const event::Turnover&) const { return "turnover"; }
    std::string_view operator()(const event::Rebound&) const { return "rebound"; }
    std::string_view operator()(const event::PeriodEnd&) const { return "period_end"; }
  };
  return std::visit(Visitor{}, kind);
}

void write_pbp(std::ostream& out, const std::vector<GameLog>& logs) {
  out << kPbpHeader << '\n';
  for (const auto& log : logs) {
    for (const auto& ev : log.events) {
      out << ev.game_id << ',' << ev.period << ',' << format_real(ev.clock_s)
          << ',' << ev.team_id << ',' << kind_name(ev.kind) << ',';
      // made,three,index_in_set,set_size,and_one,technical,offensive,team_rebound
      if (const auto* fg = std::get_if<event::FieldGoal>(&ev.kind)) {
        out << bit(fg->made) << ',' << bit(fg->three) << ",,,,,,";
      } else if (const auto* ft = std::get_if<event::FreeThrow>(&ev.kind)) {
        out << bit(ft->made) << ",," << ft->index_in_set << ',' << ft->set_size
            << ',' << bit(ft->and_one) << ',' << bit(ft->technical) << ",,";
      } else if (const auto* rb = std::get_if<event::Rebound>(&ev.kind)) {
        out << ",,,,,," << bit(rb->offensive) << ',' << bit(rb->team_rebound);
      } else {
        out << ",,,,,,,";
      }
      out << '\n';
    }
  }
}

}  // namespace fourfactors
