#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "holodyn/ball_geometry.hpp"
#include "holodyn/expr.hpp"
#include "holodyn/types.hpp"

namespace holodyn {

/// Type-erased field z -> F(z) on B^n. Every certifier works on this, so
/// projected disc generators and expression fields are interchangeable.
struct FieldFn {
  int dim = 0;
  std::function<CVec(const CVec&)> f;

  CVec operator()(const CVec& z) const { return f(z); }
};

/// Holomorphic vector field with one expression tree per component and exact
/// symbolic jacobian.
class VectorField {
 public:
  explicit VectorField(std::vector<HoloExpr> components);

  int dim() const { return static_cast<int>(components_.size()); }
  const std::vector<HoloExpr>& components() const { return components_; }

  CVec eval(const CVec& z) const;
  CMat jacobian(const CVec& z) const;

  /// "(e1, ..., en)" in the parser's grammar.
  std::string to_string() const;
  /// True when no division node came within 1e-9 of zero on the construction samples.
  bool poles_avoid_samples() const { return poles_avoid_samples_; }

  FieldFn as_function() const;

  VectorField operator+(const VectorField& other) const;
  VectorField scaled(Complex c) const;

 private:
  std::vector<HoloExpr> components_;
  std::shared_ptr<const std::vector<HoloExpr>> jacobian_;  // row-major n*n
  bool poles_avoid_samples_ = true;
};

VectorField parse_field(std::string_view text, int dim);

CVec eval(const VectorField& field, const BallPoint& z);
CMat jacobian(const VectorField& field, const BallPoint& z);

/// G(z) = a - <z,a> z - [A z + <z,b> z].
VectorField quadratic_field(const CVec& a, const CMat& A, const CVec& b);

/// Disc field G(z) = (z - b)(conj(b) z - 1) p(z).
VectorField berkson_porta_field(Complex b, const HoloExpr& p);

/// Pullback d(eta^{-1})_{eta(z)} F(eta(z)); generates eta^{-1} o Phi_t o eta.
VectorField conjugate_field(const VectorField& field, const ProjectiveAutomorphism& eta);

}  // namespace holodyn
