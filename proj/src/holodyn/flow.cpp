#include "holodyn/flow.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>

#include "holodyn/ball_geometry.hpp"
#include "holodyn/kernels.hpp"

namespace holodyn {

namespace {

using State = std::vector<double>;

CVec to_cvec(const State& x) {
  CVec z(static_cast<Eigen::Index>(x.size() / 2));
  for (Eigen::Index j = 0; j < z.size(); ++j) z(j) = Complex(x[2 * j], x[2 * j + 1]);
  return z;
}

State to_state(const CVec& z) {
  State x(2 * static_cast<std::size_t>(z.size()));
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    x[2 * j] = z(j).real();
    x[2 * j + 1] = z(j).imag();
  }
  return x;
}

double state_norm(const State& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

Trajectory integrate(const FieldFn& f, const CVec& z0, double t_end, const FlowOptions& opt) {
  if (z0.size() != f.dim) throw Error(ErrorCode::InvalidArgument, "dimension mismatch between field and start point");
  if (!(z0.norm() < 1.0)) throw Error(ErrorCode::Domain, "start point must lie in the open ball");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error(ErrorCode::InvalidArgument, "end time must be finite and non-negative");

  auto system = [&f](const State& x, State& dxdt, double) {
    const CVec v = f(to_cvec(x));
    if (!all_finite(v)) throw Error(ErrorCode::Evaluation, "field value is not finite");
    dxdt = to_state(v);
  };

  Trajectory tr;
  State x = to_state(z0);
  double t = 0.0;
  tr.times.push_back(0.0);
  tr.points.push_back(z0);
  tr.local_errors.push_back(0.0);
  if (t_end == 0.0) return tr;

  boost::numeric::odeint::runge_kutta_dopri5<State> stepper;
  State dxdt;
  system(x, dxdt, 0.0);
  State xnew(x.size()), dxdt_new(x.size()), xerr(x.size());

  // PI control constants for a 5(4) pair.
  constexpr double beta = 0.04;
  constexpr double expo1 = 0.2 - beta * 0.75;
  constexpr double safe = 0.9;
  constexpr double fac_min = 0.2;
  constexpr double fac_max = 10.0;
  double facold = 1e-4;
  double h = std::min(opt.initial_step, t_end);
  bool rejected_last = false;
  std::size_t steps = 0;

  auto record = [&](double time, const State& s, double err) {
    if (!opt.record && time < t_end) return;
    tr.times.push_back(time);
    tr.points.push_back(to_cvec(s));
    tr.local_errors.push_back(err);
  };

  while (t < t_end) {
    if (++steps > opt.max_steps) throw Error(ErrorCode::NoConvergence, "step budget exhausted at t=" + fmt(t));
    if (h < opt.min_step) {
      const CVec z = to_cvec(x);
      const double r = z.norm();
      const CVec v = f(z);
      const double speed = r > 0.0 ? inner(v, z).real() / r : v.norm();
      if (speed <= opt.saturation_gain * (1.0 - r * r)) {
        tr.saturated = true;
        tr.saturation_time = t;
        record(t_end, x, 0.0);
        return tr;
      }
      const double escape = speed > 0.0 ? t + (1.0 - r) / speed : t;
      throw Error(ErrorCode::BlowUp, "step size collapsed at t=" + fmt(t) + "; estimated escape time " + fmt(escape) +
                                         " (field is not semicomplete along this trajectory)");
    }
    const bool last = h >= t_end - t;
    const double dt = last ? t_end - t : h;
    bool ok = true;
    try {
      stepper.do_step(system, x, dxdt, t, xnew, dxdt_new, dt, xerr);
    } catch (const Error&) {
      ok = false;
    }
    double err = 0.0;
    double abs_err = 0.0;
    if (ok) {
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double sc = opt.atol + opt.rtol * std::max(std::abs(x[i]), std::abs(xnew[i]));
        err += (xerr[i] / sc) * (xerr[i] / sc);
        abs_err = std::max(abs_err, std::abs(xerr[i]));
      }
      err = std::sqrt(err / static_cast<double>(x.size()));
      ok = std::isfinite(err);
    }
    if (!ok || (err <= 1.0 && state_norm(xnew) >= opt.guard)) {
      ++tr.rejected_steps;
      h = dt * 0.5;
      rejected_last = true;
      // Pinned against the guard: no representable progress is left.
      if (ok && opt.guard - state_norm(x) <= 1e-3 * (1.0 - opt.guard)) h = 0.0;
      continue;
    }
    const double fac11 = std::pow(std::max(err, 1e-300), expo1);
    if (err <= 1.0) {
      double fac = fac11 / std::pow(facold, beta);
      fac = std::clamp(fac / safe, 1.0 / fac_max, 1.0 / fac_min);
      double hnew = dt / fac;
      if (rejected_last) hnew = std::min(hnew, dt);
      facold = std::max(err, 1e-4);
      t = last ? t_end : t + dt;
      x.swap(xnew);
      dxdt.swap(dxdt_new);
      ++tr.accepted_steps;
      tr.max_local_error = std::max(tr.max_local_error, abs_err);
      record(t, x, abs_err);
      h = last ? dt : hnew;
      rejected_last = false;
    } else {
      ++tr.rejected_steps;
      h = dt / std::min(1.0 / fac_min, fac11 / safe);
      rejected_last = true;
    }
  }
  return tr;
}

CVec flow_point(const FieldFn& f, const CVec& z0, double t, const FlowOptions& opt) {
  FlowOptions o = opt;
  o.record = false;
  return integrate(f, z0, t, o).final_point();
}

GridFlow flow_on_grid(const FieldFn& f, const CVec& z0, const std::vector<double>& times, const FlowOptions& opt) {
  GridFlow g;
  FlowOptions o = opt;
  o.record = false;
  CVec z = z0;
  double t = 0.0;
  for (double tk : times) {
    if (tk < t) throw Error(ErrorCode::InvalidArgument, "time grid must be increasing and non-negative");
    if (g.saturation_time < 0.0) {
      const Trajectory tr = integrate(f, z, tk - t, o);
      z = tr.final_point();
      if (tr.saturated) g.saturation_time = t + tr.saturation_time;
    }
    t = tk;
    g.times.push_back(tk);
    g.points.push_back(z);
  }
  return g;
}

FlowCheck semigroup_check(const FieldFn& f, const CVec& z0, double t, double s, double tol, const FlowOptions& opt) {
  const CVec direct = flow_point(f, z0, t + s, opt);
  const CVec composed = flow_point(f, flow_point(f, z0, s, opt), t, opt);
  FlowCheck c;
  c.worst = (direct - composed).norm();
  c.values = {c.worst};
  c.pass = c.worst <= tol;
  return c;
}

FlowCheck kobayashi_monotone_check(const FieldFn& f, const CVec& z0, const CVec& w0, const std::vector<double>& times,
                                   double slack, const FlowOptions& opt) {
  if ((z0 - w0).norm() == 0.0) throw Error(ErrorCode::InvalidArgument, "monotonicity check needs distinct points");
  const GridFlow a = flow_on_grid(f, z0, times, opt);
  const GridFlow b = flow_on_grid(f, w0, times, opt);
  FlowCheck c;
  c.pass = true;
  for (std::size_t i = 0; i < times.size(); ++i) {
    c.values.push_back(kobayashi_distance(a.points[i], b.points[i]));
    if (i > 0) {
      const double inc = c.values[i] - c.values[i - 1];
      c.worst = std::max(c.worst, inc);
      if (inc > slack) c.pass = false;
    }
  }
  if (a.saturation_time >= 0.0 || b.saturation_time >= 0.0) c.note = "trajectory reached the boundary guard";
  return c;
}

FlowCheck schwarz_check(const FieldFn& f, const CVec& fixed, const CVec& z, const std::vector<double>& times,
                        double slack, const FlowOptions& opt) {
  if (f(fixed).norm() > 1e-10) throw Error(ErrorCode::Precondition, "Schwarz check needs an interior zero of the field");
  const GridFlow g = flow_on_grid(f, z, times, opt);
  const double g0 = green(fixed, z);
  FlowCheck c;
  c.pass = true;
  for (const CVec& w : g.points) {
    const double v = green(fixed, w);
    c.values.push_back(v);
    c.worst = std::max(c.worst, v - g0);
    if (v > g0 + slack) c.pass = false;
  }
  return c;
}

namespace {

constexpr double kEnergyBoundaryGap = 1e-5;

std::vector<double> energy_values(const GridFlow& g, const CVec& p, double beta, const CVec& z, std::size_t& used) {
  const double u0 = poisson(p, z);
  std::vector<double> out;
  used = 0;
  for (std::size_t i = 0; i < g.times.size(); ++i) {
    if (g.saturation_time >= 0.0 && g.times[i] > g.saturation_time) break;
    // Closer to the sphere, position errors dominate the kernel value.
    if (1.0 - g.points[i].norm() < kEnergyBoundaryGap) break;
    const double ref = std::exp(-g.times[i] * beta) * u0;
    out.push_back((poisson(p, g.points[i]) - ref) / (1.0 + std::abs(ref)));
    ++used;
  }
  return out;
}

}  // namespace

FlowCheck energy_check(const FieldFn& f, const CVec& p, double beta, const CVec& z, const std::vector<double>& times,
                       double tol, const FlowOptions& opt) {
  const GridFlow g = flow_on_grid(f, z, times, opt);
  FlowCheck c;
  std::size_t used = 0;
  c.values = energy_values(g, p, beta, z, used);
  c.pass = true;
  c.worst = -std::numeric_limits<double>::infinity();
  for (double v : c.values) {
    c.worst = std::max(c.worst, v);
    if (v > tol) c.pass = false;
  }
  if (used < times.size()) c.note = "times within 1e-5 of the sphere skipped";
  return c;
}

FlowCheck energy_monotone_check(const FieldFn& f, const CVec& p, double beta, const CVec& z,
                                const std::vector<double>& times, double slack, const FlowOptions& opt) {
  const GridFlow g = flow_on_grid(f, z, times, opt);
  FlowCheck c;
  std::size_t used = 0;
  c.values = energy_values(g, p, beta, z, used);
  c.pass = true;
  for (std::size_t i = 1; i < c.values.size(); ++i) {
    const double inc = c.values[i] - c.values[i - 1];
    c.worst = std::max(c.worst, inc);
    if (inc > slack) c.pass = false;
  }
  if (used < times.size()) c.note = "times within 1e-5 of the sphere skipped";
  return c;
}

const char* attractor_kind_name(AttractorKind k) {
  switch (k) {
    case AttractorKind::Interior:
      return "interior";
    case AttractorKind::Boundary:
      return "boundary";
    case AttractorKind::Inconclusive:
      break;
  }
  return "inconclusive";
}

AttractorEstimate longtime_attractor(const FieldFn& f, const CVec& z0, double horizon, const FlowOptions& opt) {
  const GridFlow g = flow_on_grid(f, z0, {0.9 * horizon, horizon}, opt);
  const CVec& early = g.points[0];
  const CVec& late = g.points[1];
  AttractorEstimate est;
  est.time = horizon;
  est.field_norm = f(late).norm();
  est.limit = late;
  const double r = late.norm();
  if (g.saturation_time >= 0.0 || r >= 1.0 - 1e-6) {
    const CVec dir = late / r;
    const CVec dir_early = early / early.norm();
    est.limit = dir;
    if ((dir - dir_early).norm() <= 1e-4) est.kind = AttractorKind::Boundary;
    return est;
  }
  if (est.field_norm <= 1e-8) est.kind = AttractorKind::Interior;
  return est;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  const Eigen::Index n = tr.points.empty() ? 0 : tr.points.front().size();
  os << "t";
  for (Eigen::Index j = 1; j <= n; ++j) os << ",re_z" << j << ",im_z" << j;
  os << ",local_error\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    os << tr.times[i];
    for (Eigen::Index j = 0; j < n; ++j) os << ',' << tr.points[i](j).real() << ',' << tr.points[i](j).imag();
    os << ',' << tr.local_errors[i] << '\n';
  }
}

}  // namespace holodyn
