#include "fourfactors/error.hpp"

namespace fourfactors {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::HeaderMismatch: return "HeaderMismatch";
    case ErrorCode::OrderingViolation: return "OrderingViolation";
    case ErrorCode::UnknownEventKind: return "UnknownEventKind";
    case ErrorCode::DanglingFreeThrow: return "DanglingFreeThrow";
    case ErrorCode::WrongEventKind: return "WrongEventKind";
    case ErrorCode::InconsistentStream: return "InconsistentStream";
    case ErrorCode::EmptyScope: return "EmptyScope";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::MissingOpponentRebounds: return "MissingOpponentRebounds";
    case ErrorCode::NegativePossessions: return "NegativePossessions";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::UnknownComponent: return "UnknownComponent";
    case ErrorCode::DomainExit: return "DomainExit";
    case ErrorCode::ZeroGradient: return "ZeroGradient";
    case ErrorCode::NoCrossover: return "NoCrossover";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& detail,
                           std::size_t line) {
  std::string msg(to_string(code));
  if (line != 0) msg += " (line " + std::to_string(line) + ")";
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& detail, std::size_t line)
    : std::runtime_error(format_message(code, detail, line)),
      code_(code),
      detail_(detail),
      line_(line) {}

}  // namespace fourfactors
