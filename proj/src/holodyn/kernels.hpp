#pragma once

#include <functional>
#include <vector>

#include "holodyn/ball_geometry.hpp"
#include "holodyn/report.hpp"
#include "holodyn/types.hpp"

namespace holodyn {

using PointMap = std::function<CVec(const CVec&)>;

/// A real differential evaluated together with the magnitude of its
/// contributions, used to normalize certification margins.
struct Pairing {
  double value = 0.0;
  double scale = 0.0;
};

double green(const CVec& z, const CVec& w);
double green(const BallPoint& z, const BallPoint& w);

/// dG_(z,w) . (vz, vw). Throws SingularPair when |z - w| < 1e-6.
double green_differential(const CVec& z, const CVec& w, const CVec& vz, const CVec& vw);
Pairing green_pairing(const CVec& z, const CVec& w, const CVec& vz, const CVec& vw);

/// u_p(z) = -(1 - |z|^2) / |1 - <z,p>|^2.
double poisson(const CVec& p, const CVec& z);
double poisson_differential(const CVec& p, const CVec& z, const CVec& v);
Pairing poisson_pairing(const CVec& p, const CVec& z, const CVec& v);

struct HorosphereSpec {
  CVec p;
  double radius = 1.0;
};

struct KRegionSpec {
  CVec p;
  double radius = 2.0;
};

bool horosphere_contains(const HorosphereSpec& spec, const CVec& z);
/// Busemann function at p normalized at the origin.
double busemann(const CVec& p, const CVec& z);
bool kregion_contains(const KRegionSpec& spec, const CVec& z);

/// a_phi with u_p(phi(zeta)) = a_phi u_{disc,1}(zeta); throws Consistency if the
/// ratio is not constant on the check grid.
double poisson_pullback_factor(const ProjectionDevice& dev);

/// Samples u_q(h(z)) <= u_p(z) / alpha over `samples`.
CertReport julia_map_check(const PointMap& h, const CVec& p, const CVec& q, double alpha,
                           const std::vector<CVec>& samples, double tolerance = 1e-9);

}  // namespace holodyn
