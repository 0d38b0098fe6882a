#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fourfactors {

enum class ErrorCode {
  // ingest
  MalformedRow,
  InvariantViolation,
  HeaderMismatch,
  OrderingViolation,
  UnknownEventKind,
  DanglingFreeThrow,
  // possession counting
  WrongEventKind,
  InconsistentStream,
  EmptyScope,
  // factors and ratings
  DivisionByZero,
  MissingOpponentRebounds,
  NegativePossessions,
  DegenerateDenominator,
  // decomposition and sensitivity
  UnknownComponent,
  DomainExit,
  ZeroGradient,
  NoCrossover,
  // simulation and configuration
  InvalidParams,
  ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library. `line` is the 1-based input line for
// parse errors (the header is line 1) and 0 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail, std::size_t line = 0);

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return to_string(code_); }
  const std::string& detail() const noexcept { return detail_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::size_t line_;
};

}  // namespace fourfactors
