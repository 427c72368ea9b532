#include "holodyn/ball_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "holodyn/sampling.hpp"

namespace holodyn {

namespace {

CVec homogeneous(const CVec& z) {
  CVec h(z.size() + 1);
  h.head(z.size()) = z;
  h(z.size()) = 1.0;
  return h;
}

CMat embed(const CMat& block) {
  const auto n = block.rows();
  CMat m = CMat::Identity(n + 1, n + 1);
  m.topLeftCorner(n, n) = block;
  return m;
}

}  // namespace

ProjectiveAutomorphism ProjectiveAutomorphism::identity(int dim) {
  if (dim <= 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  return ProjectiveAutomorphism(CMat::Identity(dim + 1, dim + 1));
}

ProjectiveAutomorphism ProjectiveAutomorphism::unitary(const CMat& u) {
  if (u.rows() != u.cols() || u.rows() == 0) throw Error(ErrorCode::InvalidArgument, "unitary must be square");
  if ((u.adjoint() * u - CMat::Identity(u.rows(), u.rows())).norm() > 1e-10)
    throw Error(ErrorCode::Domain, "matrix is not unitary");
  return ProjectiveAutomorphism(embed(u));
}

ProjectiveAutomorphism ProjectiveAutomorphism::from_matrix(CMat matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 2)
    throw Error(ErrorCode::InvalidArgument, "homogeneous matrix must be (n+1)x(n+1)");
  Eigen::FullPivLU<CMat> lu(matrix);
  if (!lu.isInvertible()) throw Error(ErrorCode::Domain, "homogeneous matrix is singular");
  ProjectiveAutomorphism t(std::move(matrix));
  if (t.validation_defect() > 1e-10) throw Error(ErrorCode::Domain, "matrix does not preserve the unit ball");
  return t;
}

Complex ProjectiveAutomorphism::denominator(const CVec& z) const {
  const int n = dim();
  return (matrix_.row(n).head(n) * z)(0) + matrix_(n, n);
}

CVec ProjectiveAutomorphism::apply(const CVec& z) const {
  if (z.size() != dim()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch in auto_apply");
  CVec h = matrix_ * homogeneous(z);
  const Complex den = h(dim());
  if (std::abs(den) <= 1e-14 * h.norm()) throw Error(ErrorCode::SingularPoint, "automorphism denominator vanishes");
  return h.head(dim()) / den;
}

CMat ProjectiveAutomorphism::jacobian(const CVec& z) const {
  const int n = dim();
  const CVec image = apply(z);
  const Complex den = denominator(z);
  CMat j = matrix_.topLeftCorner(n, n) - image * matrix_.row(n).head(n);
  return j / den;
}

Eigen::RowVectorXcd ProjectiveAutomorphism::first_row_differential(const CVec& z) const {
  const int n = dim();
  const CVec image = apply(z);
  const Complex den = denominator(z);
  Eigen::RowVectorXcd row = matrix_.row(0).head(n) - image(0) * matrix_.row(n).head(n);
  return row / den;
}

ProjectiveAutomorphism ProjectiveAutomorphism::compose(const ProjectiveAutomorphism& inner_map) const {
  if (inner_map.dim() != dim()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch in compose");
  return ProjectiveAutomorphism(matrix_ * inner_map.matrix_);
}

ProjectiveAutomorphism ProjectiveAutomorphism::inverse() const {
  return ProjectiveAutomorphism(matrix_.inverse());
}

double ProjectiveAutomorphism::validation_defect(int ball_samples, int sphere_samples) const {
  std::mt19937_64 rng(0x5eed);
  double defect = 0.0;
  for (int i = 0; i < ball_samples; ++i) {
    CVec z = random_ball_point(dim(), rng, 0.99);
    double r = apply(z).norm();
    if (!(r < 1.0)) defect = std::max(defect, std::isfinite(r) ? r - 1.0 + 1e-300 : 1.0);
  }
  for (int i = 0; i < sphere_samples; ++i) {
    CVec p = random_sphere_point(dim(), rng);
    double r;
    try {
      r = apply(p).norm();
    } catch (const Error&) {
      // The pole of a projective map may sit on the sphere; that point maps to infinity
      // only if the map is not an automorphism.
      return 1.0;
    }
    defect = std::max(defect, std::abs(r - 1.0));
  }
  return defect;
}

ProjectiveAutomorphism moebius_center(const BallPoint& a_point) {
  const CVec& a = a_point.coords();
  const int n = a_point.dim();
  const double a2 = a.squaredNorm();
  if (a2 == 0.0) return ProjectiveAutomorphism::identity(n);
  const double s = std::sqrt(1.0 - a2);
  const CMat p = a * a.adjoint() / a2;
  const CMat q = CMat::Identity(n, n) - p;
  CMat m(n + 1, n + 1);
  m.topLeftCorner(n, n) = -p - s * q;
  m.topRightCorner(n, 1) = a;
  m.bottomLeftCorner(1, n) = -a.adjoint();
  m(n, n) = 1.0;
  return ProjectiveAutomorphism::from_matrix_unchecked(std::move(m));
}

CVec auto_apply(const ProjectiveAutomorphism& t, const CVec& z) { return t.apply(z); }

CMat auto_jacobian(const ProjectiveAutomorphism& t, const CVec& z) { return t.jacobian(z); }

ProjectiveAutomorphism parabolic_automorphism(double beta, double theta, int dim) {
  if (dim != 2) throw Error(ErrorCode::UnsupportedDimension, "parabolic family H_{s,theta} is defined on B^2 only");
  if (!(beta >= 0.0)) throw Error(ErrorCode::Domain, "beta must be non-negative");
  const double s = std::sqrt(2.0 * beta);
  const Complex e = std::polar(1.0, theta);
  CMat m(3, 3);
  m << 1.0 - beta, -s, beta,
       e * s, e, -e * s,
       -beta, -s, 1.0 + beta;
  return ProjectiveAutomorphism::from_matrix_unchecked(std::move(m));
}

CMat unitary_to_e1(const CVec& v) {
  const auto n = v.size();
  CMat id = CMat::Identity(n, n);
  const double alpha = std::arg(v(0));
  const Complex phase = std::polar(1.0, alpha);
  // Householder reflection taking v to phase * e_1, then a diagonal phase fix.
  CVec u = v;
  u(0) -= phase;
  CMat h = id;
  const double u2 = u.squaredNorm();
  if (u2 > 1e-30) h -= 2.0 * u * u.adjoint() / u2;
  CMat d = id;
  d(0, 0) = std::conj(phase);
  return d * h;
}

double moebius_norm2(const CVec& z, const CVec& w) {
  const CVec d = w - z;
  double cross = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i)
    for (Eigen::Index j = i + 1; j < z.size(); ++j) cross += std::norm(z(i) * d(j) - z(j) * d(i));
  const double num = std::max(0.0, d.squaredNorm() - cross);
  return num / std::norm(1.0 - inner(w, z));
}

double kobayashi_distance(const CVec& z, const CVec& w) {
  const double t2 = moebius_norm2(z, w);
  const double t = std::sqrt(t2);
  if (t < 0.5) return std::atanh(t);
  // artanh t = log(1+t) - log(1-t^2)/2, with 1-t^2 taken from the exact identity
  // 1 - |T_z(w)|^2 = (1-|z|^2)(1-|w|^2)/|1-<w,z>|^2.
  const double q = (1.0 - z.squaredNorm()) * (1.0 - w.squaredNorm()) / std::norm(1.0 - inner(w, z));
  return std::log1p(t) - 0.5 * std::log(q);
}

double kobayashi_distance(const BallPoint& z, const BallPoint& w) {
  if (z.dim() != w.dim()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  return kobayashi_distance(z.coords(), w.coords());
}

ProjectionDevice geodesic_device(const BallPoint& z0, const BoundaryPoint& p) {
  if (z0.dim() != p.dim()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  const ProjectiveAutomorphism t = moebius_center(z0);
  const CVec tp = t.apply(p.coords());
  const double r = tp.norm();
  if (std::abs(r - 1.0) > 1e-10) throw Error(ErrorCode::Domain, "degenerate geodesic direction");
  CVec v = tp / r;
  const auto u = ProjectiveAutomorphism::unitary(unitary_to_e1(v));
  return ProjectionDevice(z0.coords(), p.coords(), std::move(v), u.compose(t));
}

ProjectionDevice ProjectionDevice::from_carrier(const ProjectiveAutomorphism& carrier) {
  const auto inv = carrier.inverse();
  const int n = carrier.dim();
  BallPoint z0(inv.apply(CVec::Zero(n)));
  CVec p = inv.apply(unit_vector(n, 0));
  p /= p.norm();
  const CVec tp = moebius_center(z0).apply(p);
  return ProjectionDevice(z0.coords(), p, tp / tp.norm(), carrier);
}

CVec ProjectionDevice::phi(Complex zeta) const {
  CVec e = CVec::Zero(dim());
  e(0) = zeta;
  return carrier_inv_.apply(e);
}

Complex ProjectionDevice::rho_tilde(const CVec& z) const { return carrier_.apply(z)(0); }

CVec ProjectionDevice::rho(const CVec& z) const { return phi(rho_tilde(z)); }

Complex ProjectionDevice::rho_tilde_differential(const CVec& z, const CVec& v) const {
  return (carrier_.first_row_differential(z) * v)(0);
}

Complex device_rho_tilde_differential(const ProjectionDevice& dev, const BallPoint& z, const CVec& v) {
  return dev.rho_tilde_differential(z.coords(), v);
}

}  // namespace holodyn
