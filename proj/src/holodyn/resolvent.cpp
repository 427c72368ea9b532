#include "holodyn/resolvent.hpp"

#include <cmath>
#include <sstream>

#include "holodyn/extrapolation.hpp"
#include "holodyn/flow.hpp"
#include "holodyn/kernels.hpp"
#include "holodyn/parallel.hpp"

namespace holodyn {

namespace {

double residual_norm(const VectorField& f, const CVec& z, double t, const CVec& w) {
  return (w - z - t * f.eval(w)).norm();
}

struct Corrected {
  bool ok = false;
  CVec w;
  double residual = 0.0;
  int iterations = 0;
};

Corrected newton(const VectorField& f, const CVec& z, double t, CVec w, const ResolventOptions& opt) {
  Corrected c;
  const auto n = z.size();
  double res;
  try {
    res = residual_norm(f, z, t, w);
  } catch (const Error&) {
    return c;
  }
  const double target = 0.1 * opt.tolerance;
  for (int it = 0; it < opt.max_newton && res > target; ++it) {
    ++c.iterations;
    CVec r;
    CMat j;
    try {
      r = w - z - t * f.eval(w);
      j = CMat::Identity(n, n) - t * f.jacobian(w);
    } catch (const Error&) {
      return c;
    }
    const CVec delta = j.partialPivLu().solve(-r);
    if (!all_finite(delta)) return c;
    bool improved = false;
    for (double damp : {1.0, 0.5, 0.25, 0.125}) {
      const CVec trial = w + damp * delta;
      if (!(trial.norm() < 1.0)) continue;
      double tr;
      try {
        tr = residual_norm(f, z, t, trial);
      } catch (const Error&) {
        continue;
      }
      if (tr < res) {
        w = trial;
        res = tr;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  c.w = std::move(w);
  c.residual = res;
  c.ok = res <= opt.tolerance;
  return c;
}

}  // namespace

ResolventPoint resolvent_point(const VectorField& f, const CVec& z, double t, const ResolventOptions& opt) {
  if (z.size() != f.dim()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch between field and point");
  if (!(z.norm() < 1.0)) throw Error(ErrorCode::Domain, "resolvent argument must lie in the open ball");
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "resolvent parameter must be finite and non-negative");
  ResolventPoint out;
  out.t = t;
  out.w = z;
  if (t == 0.0) return out;

  const auto n = z.size();
  double s = 0.0;
  CVec w = z;
  double dt = std::min(0.1, t / 4.0) * opt.initial_step_scale;
  while (s < t) {
    if (dt < opt.min_step) {
      std::ostringstream os;
      os << "resolvent continuation stalled at t=" << s;
      throw Error(ErrorCode::NoConvergence, os.str());
    }
    const double step = std::min(dt, t - s);
    const double s_new = (step == t - s) ? t : s + step;
    // Tangent predictor: (I - s dF(w)) w' = F(w).
    CVec pred = w;
    try {
      const CMat j = CMat::Identity(n, n) - s * f.jacobian(w);
      pred = w + step * j.partialPivLu().solve(f.eval(w));
    } catch (const Error&) {
    }
    if (!all_finite(pred) || !(pred.norm() < 1.0)) pred = w;
    Corrected c = newton(f, z, s_new, pred, opt);
    out.newton_iterations += c.iterations;
    if (!c.ok) {
      dt = step * 0.5;
      continue;
    }
    ++out.continuation_steps;
    w = std::move(c.w);
    out.residual = c.residual;
    s = s_new;
    if (c.iterations <= 4) dt = std::min(2.0 * step, std::max(0.1, t / 4.0));
  }
  if (!(w.norm() < 1.0)) throw Error(ErrorCode::RootSelection, "resolvent root left the open ball");
  out.w = std::move(w);
  return out;
}

Complex disc_hyperbolic_resolvent(Complex z, double t) {
  if (!(t > 0.0)) return z;
  return (-1.0 + std::exp(0.5 * std::log(1.0 + 4.0 * t * (t + z)))) / (2.0 * t);
}

ClosedFormReport resolvent_vs_closed_form(const std::vector<double>& t_grid, const std::vector<Complex>& z_grid) {
  const VectorField f = parse_field("1 - z1^2", 1);
  ClosedFormReport rep;
  for (double t : t_grid) {
    for (Complex z : z_grid) {
      try {
        const Complex w = resolvent_point(f, CVec::Constant(1, z), t).w(0);
        const double d = std::abs(w - disc_hyperbolic_resolvent(z, t));
        if (d > rep.max_discrepancy || (rep.max_discrepancy == 0.0 && d == 0.0 && rep.worst_t == 0.0)) {
          rep.max_discrepancy = d;
          rep.worst_t = t;
          rep.worst_z = z;
        }
      } catch (const Error&) {
        ++rep.failures;
      }
    }
  }
  return rep;
}

std::vector<double> default_limit_times() {
  std::vector<double> t;
  for (int k = 4; k <= 12; ++k) t.push_back(std::ldexp(1.0, -k));
  return t;
}

GeneratorLimit resolvent_generator_limit(const VectorField& f, const CVec& z, const std::vector<double>& t_seq) {
  if (t_seq.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two resolvent parameters");
  GeneratorLimit g;
  g.t_seq = t_seq;
  const auto n = z.size();
  std::vector<std::vector<Complex>> comps(static_cast<std::size_t>(n));
  for (double t : t_seq) {
    const CVec q = (resolvent_point(f, z, t).w - z) / t;
    for (Eigen::Index j = 0; j < n; ++j) comps[j].push_back(q(j));
  }
  g.estimate = CVec(n);
  const double ratio = t_seq[0] / t_seq[1];
  for (Eigen::Index j = 0; j < n; ++j) {
    const Extrapolation ex = richardson(comps[j], ratio, 5);
    g.estimate(j) = ex.value;
    g.residual = std::max(g.residual, ex.residual);
  }
  g.field_value = f.eval(z);
  g.error = (g.estimate - g.field_value).norm();
  return g;
}

FixedPointReport resolvent_fixed_points_check(const VectorField& f, const std::vector<CVec>& candidates,
                                              const std::vector<double>& t_grid, double tol) {
  FixedPointReport rep;
  for (const CVec& c : candidates) {
    double worst = 0.0;
    for (double t : t_grid) worst = std::max(worst, (resolvent_point(f, c, t).w - c).norm());
    rep.discrepancies.push_back(worst);
    rep.worst = std::max(rep.worst, worst);
    if (worst > tol) rep.pass = false;
  }
  return rep;
}

CertReport resolvent_horosphere_check(const VectorField& f, const CVec& tau, const std::vector<double>& r_grid,
                                      const SampleSpec& spec, const std::vector<double>& t_grid, double tol) {
  if (tau.size() != f.dim()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch between field and boundary point");
  const AttractorEstimate att = longtime_attractor(f.as_function(), CVec::Zero(f.dim()));
  if (att.kind != AttractorKind::Boundary || (att.limit - tau).norm() > 1e-4)
    throw Error(ErrorCode::Precondition, "tau is not the Denjoy-Wolff point of the semigroup (flow from 0 ends " +
                                             std::string(attractor_kind_name(att.kind)) + ")");
  // Points of each horosphere E(tau, R), drawn by rejection from ball samples.
  struct Job {
    CVec z;
    double r;
  };
  std::vector<Job> jobs;
  const auto pts = ball_samples(f.dim(), spec.count, spec.seed, spec.radius_cap);
  for (double r : r_grid) {
    if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "horosphere radii must be positive");
    for (const CVec& z : pts)
      if (poisson(tau, z) < -1.0 / r) jobs.push_back({z, r});
  }
  std::vector<double> margins(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::vector<double> worst_t(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    double m = std::numeric_limits<double>::infinity();
    try {
      for (double t : t_grid) {
        const double u = poisson(tau, resolvent_point(f, jobs[i].z, t).w);
        const double v = (-1.0 / jobs[i].r - u) / (1.0 + 1.0 / jobs[i].r + std::abs(u));
        if (v < m) {
          m = v;
          worst_t[i] = t;
        }
      }
    } catch (const Error& e) {
      errors[i] = e.what();
    }
    margins[i] = m;
  });
  MarginAccumulator acc(tol);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!errors[i].empty()) {
      acc.error(errors[i]);
      continue;
    }
    acc.add(margins[i], {jobs[i].z, CVec::Constant(1, jobs[i].r), CVec::Constant(1, worst_t[i])});
  }
  return acc.finish();
}

}  // namespace holodyn
