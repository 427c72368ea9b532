#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace holodyn {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

enum class ErrorCode {
  Domain,
  SingularPoint,
  UnsupportedDimension,
  Parse,
  Holomorphy,
  UnknownIdentifier,
  Evaluation,
  SingularPair,
  Consistency,
  BlowUp,
  NoConvergence,
  RootSelection,
  Precondition,
  UnknownScenario,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse errors additionally carry the 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& what, std::size_t position)
      : Error(code, what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Hermitian product <z, w> = sum z_j conj(w_j), linear in the first slot.
inline Complex inner(const CVec& z, const CVec& w) { return w.dot(z); }

inline double norm2(const CVec& z) { return z.squaredNorm(); }

inline CVec unit_vector(int dim, int index) {
  CVec e = CVec::Zero(dim);
  e(index) = 1.0;
  return e;
}

constexpr double kBoundaryTolerance = 1e-12;
constexpr double kInteriorGuard = 1.0 - 1e-12;

/// A point of the open unit ball.
class BallPoint {
 public:
  explicit BallPoint(CVec coords);
  const CVec& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  operator const CVec&() const { return coords_; }

 private:
  CVec coords_;
};

/// A point of the unit sphere, within kBoundaryTolerance.
class BoundaryPoint {
 public:
  explicit BoundaryPoint(CVec coords);
  const CVec& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  operator const CVec&() const { return coords_; }

 private:
  CVec coords_;
};

bool all_finite(const CVec& v);

}  // namespace holodyn
