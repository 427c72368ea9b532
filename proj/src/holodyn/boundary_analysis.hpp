#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "holodyn/ball_geometry.hpp"
#include "holodyn/certification.hpp"
#include "holodyn/flow.hpp"
#include "holodyn/vector_field.hpp"

namespace holodyn {

using DiscFn = std::function<Complex(Complex)>;
using ScalarFn = std::function<Complex(const CVec&)>;

/// f_phi(zeta) = d(rho_tilde)_{phi(zeta)} . F(phi(zeta)).
DiscFn geodesic_generator(const FieldFn& f, const ProjectionDevice& dev);
/// The same function packaged as a field on the disc.
FieldFn geodesic_generator_field(const FieldFn& f, const ProjectionDevice& dev);

struct SlopeEstimate {
  std::vector<double> radii;
  std::vector<Complex> values;
  std::optional<Complex> extrapolated;
  double residual = 0.0;
  bool bounded = true;
  std::string note;
};

constexpr int kDefaultDepth = 13;

/// Dyadic radii r_k = 1 - 2^{-k}, k = 3..depth.
std::vector<double> dyadic_radii(int depth = kDefaultDepth);

/// True when q_k = |f(r_k)|/(1 - r_k) grows strictly over the last three
/// radii, by a factor of at least 3, and the last value exceeds 1e-6.
bool growth_unbounded(const std::vector<double>& magnitudes);

/// Limit of f(r)/(r - 1) as r -> 1 along the dyadic radii.
SlopeEstimate radial_slope(const DiscFn& f, int depth = kDefaultDepth);

/// Limit of (1 - rho_tilde(h(phi(r)))) / (1 - r), the boundary dilatation of h at p.
SlopeEstimate brfp_check_map(const PointMap& h, const ProjectionDevice& dev, int depth = kDefaultDepth);

enum class BrfpVerdict { Brfp, NotBrfp, Inconclusive };
const char* brfp_verdict_name(BrfpVerdict v);

struct DeviceSlope {
  CVec basepoint;
  std::string label;
  SlopeEstimate slope;
  bool failed = false;
};

struct BrfpScan {
  BrfpVerdict verdict = BrfpVerdict::Inconclusive;
  double beta = 0.0;  // sampled sup of Re A(phi, p)
  std::vector<DeviceSlope> devices;
  std::size_t worst_device = 0;  // index of the device attaining beta
  double rate_b = 0.0;           // estimate_rate_b at p
  std::string note;
};

/// Devices through p: random basepoints in the ball of radius 0.8, plus in
/// dimension 2 the parabolic family H_{s,theta} transported to p.
std::vector<DeviceSlope> scan_devices(const FieldFn& f, const CVec& p, std::size_t device_count, std::uint64_t seed,
                                      int depth = kDefaultDepth);
BrfpScan brfp_scan(const FieldFn& f, const CVec& p, std::size_t device_count = 32, std::uint64_t seed = 1,
                   int depth = kDefaultDepth);

struct DilatationFit {
  std::vector<double> times;
  std::vector<SlopeEstimate> alphas;
  double beta = 0.0;      // least-squares slope of log alpha_t against t
  double residual = 0.0;  // RMS residual of the fit
  BrfpVerdict verdict = BrfpVerdict::Inconclusive;
};

DilatationFit dilatation_semigroup(const FieldFn& f, const std::vector<double>& times, const ProjectionDevice& dev,
                                   int depth = kDefaultDepth, const FlowOptions& opt = precise_flow_options());

struct RayLimit {
  double angle = 0.0;
  SlopeEstimate estimate;  // values are g along the ray; radii hold 1 - h
};

struct NtLimit {
  std::vector<RayLimit> rays;
  bool agree = false;
  bool diverges = false;
  std::optional<Complex> limit;
};

std::vector<double> default_rays();
/// Limits of g along z = p - h(cos(psi) p + sin(psi) q), q a fixed unit vector
/// orthogonal to p (in the disc: z = p(1 - h e^{i psi})), h = 2^{-k}.
NtLimit nt_limit(const ScalarFn& g, const CVec& p, const std::vector<double>& rays = default_rays(),
                 int depth = kDefaultDepth, double tol = 1e-6);

/// Columns r, re_value, im_value.
void write_slope_csv(std::ostream& os, const SlopeEstimate& est);

}  // namespace holodyn
