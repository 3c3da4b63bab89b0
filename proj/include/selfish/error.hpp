#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace selfish {

enum class Errc {
  DimensionMismatch,
  DuplicateLabel,
  EmptyStrategySet,
  PlayerCountTooSmall,
  IndexOutOfRange,
  NotImproving,
  NotStableOptimum,
  NegativeAlpha,
  NonPositiveScale,
  ParamOutOfRange,
  InfeasibleParams,
  ExplosionGuard,
  MissingDiscrepancy,
  ZeroLinearCoefficients,
  OutOfDeviationRange,
  SyntaxError,
  MissingProfile,
  DuplicateProfile,
  ZeroDenominator,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DuplicateLabel: return "DuplicateLabel";
    case Errc::EmptyStrategySet: return "EmptyStrategySet";
    case Errc::PlayerCountTooSmall: return "PlayerCountTooSmall";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::NotImproving: return "NotImproving";
    case Errc::NotStableOptimum: return "NotStableOptimum";
    case Errc::NegativeAlpha: return "NegativeAlpha";
    case Errc::NonPositiveScale: return "NonPositiveScale";
    case Errc::ParamOutOfRange: return "ParamOutOfRange";
    case Errc::InfeasibleParams: return "InfeasibleParams";
    case Errc::ExplosionGuard: return "ExplosionGuard";
    case Errc::MissingDiscrepancy: return "MissingDiscrepancy";
    case Errc::ZeroLinearCoefficients: return "ZeroLinearCoefficients";
    case Errc::OutOfDeviationRange: return "OutOfDeviationRange";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::MissingProfile: return "MissingProfile";
    case Errc::DuplicateProfile: return "DuplicateProfile";
    case Errc::ZeroDenominator: return "ZeroDenominator";
  }
  return "Unknown";
}

/// The single exception type of the library; `code()` names the violated
/// contract, `what()` carries a human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace selfish
