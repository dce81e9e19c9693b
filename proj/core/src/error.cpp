#include "finsler/error.hpp"

namespace finsler {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DivisionByZeroValue: return "DivisionByZeroValue";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::OrderExceeded: return "OrderExceeded";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::SingularMetric: return "SingularMetric";
    case ErrorCode::UnsupportedVariance: return "UnsupportedVariance";
    case ErrorCode::RandersConditionViolated: return "RandersConditionViolated";
    case ErrorCode::IntegrationDidNotConverge: return "IntegrationDidNotConverge";
    case ErrorCode::NotProjective: return "NotProjective";
    case ErrorCode::EquivalenceViolation: return "EquivalenceViolation";
    case ErrorCode::IsotropyUnknown: return "IsotropyUnknown";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::UnsupportedCurvature: return "UnsupportedCurvature";
    case ErrorCode::RankDeficientSampling: return "RankDeficientSampling";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace finsler
