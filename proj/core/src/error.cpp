#include "pdq/error.hpp"

namespace pdq {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NonSquareIntegrable: return "NonSquareIntegrable";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::RootNotBracketed: return "RootNotBracketed";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::InvalidDensity: return "InvalidDensity";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::NonPositiveQuantileDensity: return "NonPositiveQuantileDensity";
    case ErrorCode::DegenerateProjection: return "DegenerateProjection";
    case ErrorCode::FixedPointDivergence: return "FixedPointDivergence";
    case ErrorCode::NoInteriorMinimum: return "NoInteriorMinimum";
    case ErrorCode::InconclusiveLimit: return "InconclusiveLimit";
    case ErrorCode::EmptyFeasibleGrid: return "EmptyFeasibleGrid";
    case ErrorCode::NonPositiveData: return "NonPositiveData";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::DegenerateRegressor: return "DegenerateRegressor";
  }
  return "Unknown";
}

}  // namespace pdq
