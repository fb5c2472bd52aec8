#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hilbert {

enum class ErrorCode {
  // Input validation.
  NotFullDimensional,
  DegenerateInput,
  DimensionMismatch,
  HalfspaceMismatch,
  PointNotInterior,
  ZeroDirection,
  NotCollinear,
  BadOrdering,
  HypothesisViolated,
  InvalidArgument,
  // Numeric failures.
  DegenerateCell,
  SingularChart,
  LocationFailure,
  ConeLocationFailure,
  Overflow,
  PointAtInfinity,
  SamplingExhausted,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFullDimensional: return "NotFullDimensional";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::HalfspaceMismatch: return "HalfspaceMismatch";
    case ErrorCode::PointNotInterior: return "PointNotInterior";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::NotCollinear: return "NotCollinear";
    case ErrorCode::BadOrdering: return "BadOrdering";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateCell: return "DegenerateCell";
    case ErrorCode::SingularChart: return "SingularChart";
    case ErrorCode::LocationFailure: return "LocationFailure";
    case ErrorCode::ConeLocationFailure: return "ConeLocationFailure";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::PointAtInfinity: return "PointAtInfinity";
    case ErrorCode::SamplingExhausted: return "SamplingExhausted";
  }
  return "Unknown";
}

/// True for errors caused by bad input, false for numeric failures
/// (singular systems, tiling bugs, exhausted samplers).
constexpr bool is_validation_error(ErrorCode code) {
  return code < ErrorCode::DegenerateCell;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hilbert
