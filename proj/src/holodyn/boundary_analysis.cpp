#include "holodyn/boundary_analysis.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "holodyn/extrapolation.hpp"
#include "holodyn/parallel.hpp"
#include "holodyn/sampling.hpp"

namespace holodyn {

DiscFn geodesic_generator(const FieldFn& f, const ProjectionDevice& dev) {
  return [f, dev](Complex zeta) {
    const CVec z = dev.phi(zeta);
    return dev.rho_tilde_differential(z, f(z));
  };
}

FieldFn geodesic_generator_field(const FieldFn& f, const ProjectionDevice& dev) {
  const DiscFn g = geodesic_generator(f, dev);
  return {1, [g](const CVec& z) { return CVec::Constant(1, g(z(0))); }};
}

std::vector<double> dyadic_radii(int depth) {
  std::vector<double> r;
  for (int k = 3; k <= depth; ++k) r.push_back(1.0 - std::ldexp(1.0, -k));
  return r;
}

bool growth_unbounded(const std::vector<double>& q) {
  const std::size_t n = q.size();
  if (n < 3) return false;
  const double a = q[n - 3], b = q[n - 2], c = q[n - 1];
  if (!std::isfinite(c)) return true;
  // Growth among roundoff-sized values is noise, not divergence.
  return a < b && b < c && c >= 3.0 * a && c > 1e-6;
}

namespace {

SlopeEstimate finish_estimate(SlopeEstimate est) {
  std::vector<double> mags;
  for (const Complex& v : est.values) mags.push_back(std::abs(v));
  bool finite = true;
  for (const Complex& v : est.values) finite = finite && std::isfinite(v.real()) && std::isfinite(v.imag());
  est.bounded = finite && !growth_unbounded(mags);
  if (est.values.empty()) {
    est.bounded = false;
    est.residual = std::numeric_limits<double>::infinity();
    if (est.note.empty()) est.note = "no evaluable radius";
    return est;
  }
  if (!est.bounded) {
    est.residual = std::numeric_limits<double>::infinity();
    if (est.note.empty()) est.note = "ratio grows without bound";
    return est;
  }
  const Extrapolation ex = richardson(est.values, 2.0, 5);
  est.extrapolated = ex.value;
  est.residual = ex.residual;
  return est;
}

}  // namespace

SlopeEstimate radial_slope(const DiscFn& f, int depth) {
  SlopeEstimate est;
  for (double r : dyadic_radii(depth)) {
    Complex v;
    try {
      v = f(r);
    } catch (const Error& e) {
      est.note = std::string("evaluation stopped at r=") + std::to_string(r) + ": " + e.what();
      break;
    }
    est.radii.push_back(r);
    est.values.push_back(v / (r - 1.0));
  }
  return finish_estimate(std::move(est));
}

SlopeEstimate brfp_check_map(const PointMap& h, const ProjectionDevice& dev, int depth) {
  SlopeEstimate est;
  for (double r : dyadic_radii(depth)) {
    Complex v;
    try {
      v = (1.0 - dev.rho_tilde(h(dev.phi(r)))) / (1.0 - r);
    } catch (const Error& e) {
      est.note = std::string("evaluation stopped at r=") + std::to_string(r) + ": " + e.what();
      break;
    }
    est.radii.push_back(r);
    est.values.push_back(v);
  }
  return finish_estimate(std::move(est));
}

const char* brfp_verdict_name(BrfpVerdict v) {
  switch (v) {
    case BrfpVerdict::Brfp:
      return "brfp";
    case BrfpVerdict::NotBrfp:
      return "not-brfp";
    case BrfpVerdict::Inconclusive:
      break;
  }
  return "inconclusive";
}

std::vector<DeviceSlope> scan_devices(const FieldFn& f, const CVec& p, std::size_t device_count, std::uint64_t seed,
                                      int depth) {
  const int n = f.dim;
  if (p.size() != n) throw Error(ErrorCode::InvalidArgument, "dimension mismatch between field and boundary point");
  const BoundaryPoint bp(p);
  std::vector<std::pair<std::string, ProjectionDevice>> devs;
  if (n == 2) {
    const auto to_e1 = ProjectiveAutomorphism::unitary(unitary_to_e1(p));
    const double pi = std::numbers::pi;
    for (double s : {0.0, 0.5, 1.0, 2.0}) {
      for (double theta : {0.0, pi / 2, pi, 3 * pi / 2}) {
        if (s == 0.0 && theta != 0.0) continue;
        const auto carrier = parabolic_automorphism(0.5 * s * s, theta).compose(to_e1);
        std::ostringstream label;
        label << "H(s=" << s << ",theta=" << theta << ")";
        devs.emplace_back(label.str(), ProjectionDevice::from_carrier(carrier));
      }
    }
  }
  const auto base = ball_samples(n, device_count, seed, 0.8);
  for (std::size_t i = 0; i < base.size(); ++i)
    devs.emplace_back("basepoint#" + std::to_string(i), geodesic_device(BallPoint(base[i]), bp));

  std::vector<DeviceSlope> out(devs.size());
  parallel_for(devs.size(), [&](std::size_t i) {
    out[i].label = devs[i].first;
    out[i].basepoint = devs[i].second.basepoint();
    try {
      out[i].slope = radial_slope(geodesic_generator(f, devs[i].second), depth);
      out[i].failed = out[i].slope.values.empty();
    } catch (const Error& e) {
      out[i].failed = true;
      out[i].slope.note = e.what();
    }
  });
  return out;
}

BrfpScan brfp_scan(const FieldFn& f, const CVec& p, std::size_t device_count, std::uint64_t seed, int depth) {
  BrfpScan scan;
  scan.devices = scan_devices(f, p, device_count, seed, depth);
  bool any = false;
  double worst_imag = 0.0;
  std::size_t imag_device = 0;
  for (std::size_t i = 0; i < scan.devices.size(); ++i) {
    const auto& d = scan.devices[i];
    if (d.failed) continue;
    if (!d.slope.bounded) {
      scan.verdict = BrfpVerdict::NotBrfp;
      scan.worst_device = i;
      scan.note = "slope unbounded on device " + d.label;
      return scan;
    }
    const Complex a = *d.slope.extrapolated;
    if (!any || a.real() > scan.beta) {
      scan.beta = a.real();
      scan.worst_device = i;
    }
    const double excess = std::abs(a.imag()) - std::max(1e-6, 10.0 * d.slope.residual);
    if (excess > worst_imag) {
      worst_imag = excess;
      imag_device = i;
    }
    any = true;
  }
  if (!any) {
    scan.note = "every device failed to evaluate";
    return scan;
  }
  if (worst_imag > 0.0) {
    scan.verdict = BrfpVerdict::NotBrfp;
    scan.worst_device = imag_device;
    scan.note = "non-real slope on device " + scan.devices[imag_device].label;
    return scan;
  }
  SampleSpec spec;
  spec.seed = seed;
  try {
    const RateEstimate rate = estimate_rate(f, p, spec);
    scan.rate_b = rate.b;
    if (rate.unbounded) {
      scan.verdict = BrfpVerdict::NotBrfp;
      scan.note = "rate ratio du.F/u is unbounded below near p";
      return scan;
    }
    const CertReport cert = certify_brfp_rate(f, p, scan.beta, spec);
    if (cert.verdict == Verdict::Pass) {
      scan.verdict = BrfpVerdict::Brfp;
    } else {
      scan.note = "rate inequality not certified at the sampled slope supremum";
    }
  } catch (const Error& e) {
    scan.note = e.what();
  }
  return scan;
}

DilatationFit dilatation_semigroup(const FieldFn& f, const std::vector<double>& times, const ProjectionDevice& dev,
                                   int depth, const FlowOptions& opt) {
  DilatationFit fit;
  fit.times = times;
  double stt = 0.0, sty = 0.0;
  std::vector<double> logs;
  bool ok = true;
  for (double t : times) {
    const PointMap h = [&](const CVec& z) { return flow_point(f, z, t, opt); };
    SlopeEstimate a = brfp_check_map(h, dev, depth);
    if (!a.bounded) {
      fit.verdict = BrfpVerdict::NotBrfp;
      ok = false;
    } else if (!(a.extrapolated->real() > 0.0)) {
      ok = false;
    } else {
      const double y = std::log(a.extrapolated->real());
      logs.push_back(y);
      stt += t * t;
      sty += t * y;
    }
    fit.alphas.push_back(std::move(a));
  }
  if (!ok) return fit;
  fit.beta = stt > 0.0 ? sty / stt : 0.0;
  double ss = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) ss += std::pow(logs[i] - fit.beta * times[i], 2);
  fit.residual = times.empty() ? 0.0 : std::sqrt(ss / static_cast<double>(times.size()));
  fit.verdict = BrfpVerdict::Brfp;
  return fit;
}

std::vector<double> default_rays() { return {0.0, std::numbers::pi / 6, -std::numbers::pi / 6}; }

NtLimit nt_limit(const ScalarFn& g, const CVec& p, const std::vector<double>& rays, int depth, double tol) {
  const int n = static_cast<int>(p.size());
  if (std::abs(p.norm() - 1.0) > kBoundaryTolerance) throw Error(ErrorCode::Domain, "p must lie on the unit sphere");
  CVec q;
  if (n > 1) {
    int j = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(p(i)) < std::abs(p(j))) j = i;
    q = unit_vector(n, j) - std::conj(p(j)) * p;
    q /= q.norm();
  }
  NtLimit out;
  for (double psi : rays) {
    if (!(std::abs(psi) < std::numbers::pi / 2)) throw Error(ErrorCode::InvalidArgument, "approach angle must lie in (-pi/2, pi/2)");
    RayLimit ray;
    ray.angle = psi;
    for (int k = 3; k <= depth; ++k) {
      const double h = std::ldexp(1.0, -k);
      const CVec z = n == 1 ? CVec(p * (1.0 - h * std::polar(1.0, psi)))
                            : CVec(p - h * (std::cos(psi) * p + std::sin(psi) * q));
      Complex v;
      try {
        v = g(z);
      } catch (const Error& e) {
        ray.estimate.note = e.what();
        break;
      }
      ray.estimate.radii.push_back(1.0 - h);
      ray.estimate.values.push_back(v);
    }
    ray.estimate = finish_estimate(std::move(ray.estimate));
    if (!ray.estimate.bounded) out.diverges = true;
    out.rays.push_back(std::move(ray));
  }
  if (out.diverges || out.rays.empty()) return out;
  const Complex first = *out.rays[0].estimate.extrapolated;
  out.agree = true;
  for (const auto& r : out.rays) {
    const double allowed = tol + 10.0 * std::max(r.estimate.residual, out.rays[0].estimate.residual);
    if (std::abs(*r.estimate.extrapolated - first) > allowed) out.agree = false;
  }
  if (out.agree) out.limit = first;
  return out;
}

void write_slope_csv(std::ostream& os, const SlopeEstimate& est) {
  os << "r,re_value,im_value\n" << std::setprecision(17);
  for (std::size_t i = 0; i < est.values.size(); ++i)
    os << est.radii[i] << ',' << est.values[i].real() << ',' << est.values[i].imag() << '\n';
}

}  // namespace holodyn
