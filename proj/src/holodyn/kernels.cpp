#include "holodyn/kernels.hpp"

#include <cmath>
#include <limits>

namespace holodyn {

double green(const CVec& z, const CVec& w) {
  if (z.size() != w.size()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  const double t2 = moebius_norm2(z, w);
  if (t2 == 0.0) return -std::numeric_limits<double>::infinity();
  return 0.5 * std::log(t2);
}

double green(const BallPoint& z, const BallPoint& w) { return green(z.coords(), w.coords()); }

Pairing green_pairing(const CVec& z, const CVec& w, const CVec& vz, const CVec& vw) {
  if ((z - w).norm() < 1e-6) throw Error(ErrorCode::SingularPair, "green differential requested near the diagonal");
  // G = log(1-Q)/2 with Q = (1-|z|^2)(1-|w|^2)/|1-<z,w>|^2, so
  // dG = -Q/(2(1-Q)) dlog Q.
  const double az = 1.0 - z.squaredNorm();
  const double aw = 1.0 - w.squaredNorm();
  const Complex c = 1.0 - inner(z, w);
  const double t1 = -2.0 * inner(vz, z).real() / az;
  const double t2 = -2.0 * inner(vw, w).real() / aw;
  const double t3 = 2.0 * ((inner(vz, w) + inner(z, vw)) / c).real();
  const CVec d = w - z;
  double cross = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i)
    for (Eigen::Index j = i + 1; j < z.size(); ++j) cross += std::norm(z(i) * d(j) - z(j) * d(i));
  const double num = d.squaredNorm() - cross;  // |1-<z,w>|^2 (1-Q)
  const double coef = az * aw / num;           // Q / (1-Q)
  return {-0.5 * coef * (t1 + t2 + t3), 0.5 * coef * (std::abs(t1) + std::abs(t2) + std::abs(t3))};
}

double green_differential(const CVec& z, const CVec& w, const CVec& vz, const CVec& vw) {
  return green_pairing(z, w, vz, vw).value;
}

double poisson(const CVec& p, const CVec& z) {
  if (p.size() != z.size()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  return -(1.0 - z.squaredNorm()) / std::norm(1.0 - inner(z, p));
}

Pairing poisson_pairing(const CVec& p, const CVec& z, const CVec& v) {
  const double u = poisson(p, z);
  const double a = -2.0 * inner(v, z).real() / (1.0 - z.squaredNorm());
  const double b = 2.0 * (inner(v, p) / (1.0 - inner(z, p))).real();
  return {u * (a + b), std::abs(u) * (std::abs(a) + std::abs(b))};
}

double poisson_differential(const CVec& p, const CVec& z, const CVec& v) { return poisson_pairing(p, z, v).value; }

namespace {
double horo_ratio(const CVec& p, const CVec& z) { return std::norm(1.0 - inner(z, p)) / (1.0 - z.squaredNorm()); }
}  // namespace

bool horosphere_contains(const HorosphereSpec& spec, const CVec& z) {
  if (!(spec.radius > 0.0)) throw Error(ErrorCode::Domain, "horosphere radius must be positive");
  return horo_ratio(spec.p, z) < spec.radius;
}

double busemann(const CVec& p, const CVec& z) { return 0.5 * std::log(horo_ratio(p, z)); }

bool kregion_contains(const KRegionSpec& spec, const CVec& z) {
  if (!(spec.radius > 1.0)) throw Error(ErrorCode::Domain, "K-region radius must exceed 1");
  return busemann(spec.p, z) + kobayashi_distance(z, CVec::Zero(z.size())) < std::log(spec.radius);
}

double poisson_pullback_factor(const ProjectionDevice& dev) {
  const double a = -poisson(dev.target(), dev.basepoint());
  const CVec one = CVec::Constant(1, 1.0);
  const Complex grid[] = {0.0, 0.3, -0.3, Complex(0, 0.7), Complex(0, -0.7), 0.9, Complex(0.5, 0.5), -0.8};
  for (Complex zeta : grid) {
    const double disc = poisson(one, CVec::Constant(1, zeta));
    const double ratio = poisson(dev.target(), dev.phi(zeta)) / disc;
    if (std::abs(ratio - a) > 1e-9 * std::max(1.0, a))
      throw Error(ErrorCode::Consistency, "Poisson pullback ratio is not constant along the geodesic");
  }
  return a;
}

CertReport julia_map_check(const PointMap& h, const CVec& p, const CVec& q, double alpha,
                           const std::vector<CVec>& samples, double tolerance) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::Domain, "dilatation coefficient must be positive");
  MarginAccumulator acc(tolerance);
  for (const CVec& z : samples) {
    CVec hz;
    try {
      hz = h(z);
    } catch (const Error& e) {
      acc.error(e.what());
      continue;
    }
    if (!all_finite(hz) || hz.norm() > 1.0) {
      acc.error("h(z) escapes the closed ball");
      continue;
    }
    const double lhs = poisson(q, hz);
    const double rhs = poisson(p, z) / alpha;
    acc.add((rhs - lhs) / (1.0 + std::abs(lhs) + std::abs(rhs)), {z});
  }
  return acc.finish();
}

}  // namespace holodyn
