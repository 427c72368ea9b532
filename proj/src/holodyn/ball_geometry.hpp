#pragma once

#include "holodyn/types.hpp"

namespace holodyn {

/// Biholomorphism of the unit ball stored as a projective-linear map acting on
/// homogeneous coordinates [z : 1]. Covers Moebius maps, unitaries and the
/// parabolic family used for devices through e_1.
class ProjectiveAutomorphism {
 public:
  /// Wraps a homogeneous matrix and checks that it preserves the ball and the
  /// sphere on a fixed sample set.
  static ProjectiveAutomorphism from_matrix(CMat matrix);
  /// No preservation check; for matrices that are automorphisms by construction.
  static ProjectiveAutomorphism from_matrix_unchecked(CMat matrix) { return ProjectiveAutomorphism(std::move(matrix)); }
  static ProjectiveAutomorphism identity(int dim);
  static ProjectiveAutomorphism unitary(const CMat& u);

  int dim() const { return static_cast<int>(matrix_.rows()) - 1; }
  const CMat& matrix() const { return matrix_; }

  CVec apply(const CVec& z) const;
  CMat jacobian(const CVec& z) const;
  /// First row of the jacobian, i.e. the differential of the first component.
  Eigen::RowVectorXcd first_row_differential(const CVec& z) const;

  ProjectiveAutomorphism compose(const ProjectiveAutomorphism& inner_map) const;
  ProjectiveAutomorphism inverse() const;

  /// Max deviation found when checking ball and sphere preservation.
  double validation_defect(int ball_samples = 2000, int sphere_samples = 200) const;

 private:
  explicit ProjectiveAutomorphism(CMat matrix) : matrix_(std::move(matrix)) {}
  Complex denominator(const CVec& z) const;

  CMat matrix_;
};

ProjectiveAutomorphism moebius_center(const BallPoint& a);
CVec auto_apply(const ProjectiveAutomorphism& t, const CVec& z);
CMat auto_jacobian(const ProjectiveAutomorphism& t, const CVec& z);
/// H_{s,theta} with s = sqrt(2 beta); only defined on B^2.
ProjectiveAutomorphism parabolic_automorphism(double beta, double theta, int dim = 2);

/// Unitary U with U v = e_1 for a unit vector v.
CMat unitary_to_e1(const CVec& v);

/// Squared norm of T_z(w), computed without cancellation near the diagonal.
double moebius_norm2(const CVec& z, const CVec& w);
double kobayashi_distance(const BallPoint& z, const BallPoint& w);
double kobayashi_distance(const CVec& z, const CVec& w);

/// A complex geodesic phi with phi(0) = z0, phi(1) = p, together with the
/// Lempert retraction rho and its left inverse rho_tilde.
class ProjectionDevice {
 public:
  const CVec& basepoint() const { return z0_; }
  const CVec& target() const { return p_; }
  const CVec& direction() const { return v_; }
  /// Carrier M with M(phi(zeta)) = zeta e_1.
  const ProjectiveAutomorphism& carrier() const { return carrier_; }
  int dim() const { return carrier_.dim(); }

  CVec phi(Complex zeta) const;
  Complex rho_tilde(const CVec& z) const;
  CVec rho(const CVec& z) const;
  Complex rho_tilde_differential(const CVec& z, const CVec& v) const;

  static ProjectionDevice from_carrier(const ProjectiveAutomorphism& carrier);

 private:
  ProjectionDevice(CVec z0, CVec p, CVec v, ProjectiveAutomorphism carrier)
      : z0_(std::move(z0)), p_(std::move(p)), v_(std::move(v)),
        carrier_(std::move(carrier)), carrier_inv_(carrier_.inverse()) {}
  friend ProjectionDevice geodesic_device(const BallPoint&, const BoundaryPoint&);

  CVec z0_;
  CVec p_;
  CVec v_;
  ProjectiveAutomorphism carrier_;
  ProjectiveAutomorphism carrier_inv_;
};

ProjectionDevice geodesic_device(const BallPoint& z0, const BoundaryPoint& p);
Complex device_rho_tilde_differential(const ProjectionDevice& dev, const BallPoint& z, const CVec& v);

}  // namespace holodyn
