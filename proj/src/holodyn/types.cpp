#include "holodyn/types.hpp"

#include <cmath>

namespace holodyn {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Domain: return "domain";
    case ErrorCode::SingularPoint: return "singular-point";
    case ErrorCode::UnsupportedDimension: return "unsupported-dimension";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Holomorphy: return "holomorphy";
    case ErrorCode::UnknownIdentifier: return "unknown-identifier";
    case ErrorCode::Evaluation: return "evaluation";
    case ErrorCode::SingularPair: return "singular-pair";
    case ErrorCode::Consistency: return "consistency";
    case ErrorCode::BlowUp: return "blow-up";
    case ErrorCode::NoConvergence: return "no-convergence";
    case ErrorCode::RootSelection: return "root-selection";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::UnknownScenario: return "unknown-scenario";
    case ErrorCode::InvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

bool all_finite(const CVec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) return false;
  }
  return true;
}

BallPoint::BallPoint(CVec coords) : coords_(std::move(coords)) {
  if (coords_.size() == 0) throw Error(ErrorCode::Domain, "ball point of dimension 0");
  if (!all_finite(coords_)) throw Error(ErrorCode::Domain, "ball point has non-finite entries");
  if (coords_.norm() >= kInteriorGuard)
    throw Error(ErrorCode::Domain, "point is not in the open unit ball");
}

BoundaryPoint::BoundaryPoint(CVec coords) : coords_(std::move(coords)) {
  if (coords_.size() == 0) throw Error(ErrorCode::Domain, "boundary point of dimension 0");
  if (!all_finite(coords_)) throw Error(ErrorCode::Domain, "boundary point has non-finite entries");
  if (std::abs(coords_.norm() - 1.0) > kBoundaryTolerance)
    throw Error(ErrorCode::Domain, "point is not on the unit sphere");
}

}  // namespace holodyn
