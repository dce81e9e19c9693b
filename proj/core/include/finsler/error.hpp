#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace finsler {

/// Failure categories raised by the engine. Every thrown finsler::Error
/// carries one of these so callers (the CLI in particular) can map them
/// to exit codes and report entries.
enum class ErrorCode {
  DivisionByZeroValue,
  DomainError,
  OrderExceeded,
  NotPositiveDefinite,
  SingularMetric,
  UnsupportedVariance,
  RandersConditionViolated,
  IntegrationDidNotConverge,
  NotProjective,
  EquivalenceViolation,
  IsotropyUnknown,
  InvalidSpec,
  UnsupportedCurvature,
  RankDeficientSampling,
  SchemaError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace finsler
