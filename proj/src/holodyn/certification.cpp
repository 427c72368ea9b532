#include "holodyn/certification.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "holodyn/optimize.hpp"
#include "holodyn/parallel.hpp"

namespace holodyn {

namespace {

struct Outcome {
  enum class Kind { Margin, Skip, Error } kind = Kind::Skip;
  double margin = 0.0;
  std::vector<CVec> witness;
  std::string note;
};

template <class Eval>
CertReport run_samples(std::size_t count, double tol, Eval&& eval) {
  std::vector<Outcome> out(count);
  parallel_for(count, [&](std::size_t i) {
    try {
      out[i] = eval(i);
    } catch (const Error& e) {
      out[i].kind = Outcome::Kind::Error;
      out[i].note = e.what();
    }
  });
  MarginAccumulator acc(tol);
  for (auto& o : out) {
    switch (o.kind) {
      case Outcome::Kind::Margin:
        if (std::isfinite(o.margin)) {
          acc.add(o.margin, std::move(o.witness));
        } else {
          acc.error("non-finite margin");
        }
        break;
      case Outcome::Kind::Skip:
        acc.skip();
        break;
      case Outcome::Kind::Error:
        acc.error(o.note);
        break;
    }
  }
  return acc.finish();
}

Outcome margin_outcome(const Pairing& m, std::vector<CVec> witness) {
  Outcome o;
  o.kind = Outcome::Kind::Margin;
  o.margin = m.value / (1.0 + m.scale);
  o.witness = std::move(witness);
  return o;
}

CVec eval_checked(const FieldFn& f, const CVec& z) {
  CVec v = f(z);
  if (!all_finite(v)) throw Error(ErrorCode::Evaluation, "field value is not finite");
  return v;
}

void require_dim(const FieldFn& f, const CVec& p) {
  if (p.size() != f.dim) throw Error(ErrorCode::InvalidArgument, "dimension mismatch between field and boundary point");
  if (std::abs(p.norm() - 1.0) > kBoundaryTolerance) throw Error(ErrorCode::Domain, "p must lie on the unit sphere");
}

}  // namespace

Pairing green_generator_margin(const FieldFn& f, const CVec& z, const CVec& w) {
  const Pairing g = green_pairing(z, w, eval_checked(f, z), eval_checked(f, w));
  return {-g.value, g.scale};
}

Pairing ball_generator_margin(const FieldFn& f, const CVec& z, const CVec& w) {
  const CVec fz = eval_checked(f, z);
  const CVec fw = eval_checked(f, w);
  const double cross = ((inner(fz, w) + inner(z, fw)) / (1.0 - inner(z, w))).real();
  const double tz = inner(z, fz).real() / (1.0 - z.squaredNorm());
  const double tw = inner(w, fw).real() / (1.0 - w.squaredNorm());
  return {cross - tz - tw, std::abs(cross) + std::abs(tz) + std::abs(tw)};
}

Pairing brfp_rate_margin(const FieldFn& f, const CVec& p, double beta, const CVec& z) {
  const Pairing du = poisson_pairing(p, z, eval_checked(f, z));
  const double u = poisson(p, z);
  return {-(du.value + beta * u), du.scale + std::abs(beta * u)};
}

double rate_ratio(const FieldFn& f, const CVec& p, const CVec& z) {
  const CVec v = eval_checked(f, z);
  return -2.0 * inner(v, z).real() / (1.0 - z.squaredNorm()) + 2.0 * (inner(v, p) / (1.0 - inner(z, p))).real();
}

CertReport certify_generator_green(const FieldFn& f, const SampleSpec& spec, double tol) {
  const auto pairs = pair_samples(f.dim, spec);
  auto r = run_samples(pairs.size(), tol, [&](std::size_t i) {
    return margin_outcome(green_generator_margin(f, pairs[i].z, pairs[i].w), {pairs[i].z, pairs[i].w});
  });
  r.group_candidate = r.verdict == Verdict::Pass && r.max_abs_margin <= tol;
  return r;
}

CertReport certify_generator_ball(const FieldFn& f, const SampleSpec& spec, double tol) {
  const auto pairs = pair_samples(f.dim, spec);
  auto r = run_samples(pairs.size(), tol, [&](std::size_t i) {
    return margin_outcome(ball_generator_margin(f, pairs[i].z, pairs[i].w), {pairs[i].z, pairs[i].w});
  });
  r.group_candidate = r.verdict == Verdict::Pass && r.max_abs_margin <= tol;
  return r;
}

std::vector<double> default_shift_grid() { return {1e-3, 1e-2, 0.1, 0.5}; }

CertReport certify_generator_shift(const FieldFn& f, const SampleSpec& spec, const std::vector<double>& r_grid,
                                   double tol) {
  if (r_grid.empty()) throw Error(ErrorCode::InvalidArgument, "shift grid is empty");
  for (double r : r_grid)
    if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "shift radii must be positive");
  const auto pairs = pair_samples(f.dim, spec);
  return run_samples(pairs.size(), tol, [&](std::size_t i) {
    const CVec& z = pairs[i].z;
    const CVec& w = pairs[i].w;
    const CVec fz = eval_checked(f, z);
    const CVec fw = eval_checked(f, w);
    const double k = kobayashi_distance(z, w);
    Outcome o;
    bool any = false;
    for (double r : r_grid) {
      const CVec zs = z - r * fz;
      const CVec ws = w - r * fw;
      if (zs.norm() >= kInteriorGuard || ws.norm() >= kInteriorGuard) continue;
      const double m = (kobayashi_distance(zs, ws) - k) / (1.0 + k);
      if (!any || m < o.margin) {
        o.margin = m;
        o.witness = {z, w, CVec::Constant(1, r)};
      }
      any = true;
    }
    o.kind = any ? Outcome::Kind::Margin : Outcome::Kind::Skip;
    return o;
  });
}

CertReport certify_group(const FieldFn& f, const SampleSpec& spec, double tol) {
  const auto pairs = pair_samples(f.dim, spec);
  auto r = run_samples(pairs.size(), tol, [&](std::size_t i) {
    Pairing g = green_generator_margin(f, pairs[i].z, pairs[i].w);
    g.value = -std::abs(g.value);
    return margin_outcome(g, {pairs[i].z, pairs[i].w});
  });
  r.group_candidate = r.verdict == Verdict::Pass;
  return r;
}

namespace {

double quadratic_margin(const CMat& A, const CVec& b, const CVec& u) {
  return inner(A * u, u).real() - std::abs(inner(b, u));
}

// Projected gradient descent on the unit sphere with backtracking.
CVec refine_on_sphere(const CMat& A, const CVec& b, CVec u, int iterations) {
  const CMat sym = A + A.adjoint();
  double value = quadratic_margin(A, b, u);
  double step = 0.1;
  for (int it = 0; it < iterations && step > 1e-16; ++it) {
    const Complex c = inner(b, u);
    CVec g = sym * u;
    if (std::abs(c) > 1e-15) g -= b * (std::conj(c) / std::abs(c));
    g -= inner(g, u).real() * u;
    if (g.norm() < 1e-15) break;
    bool moved = false;
    while (step > 1e-16) {
      CVec trial = u - step * g;
      trial /= trial.norm();
      const double tv = quadratic_margin(A, b, trial);
      if (tv < value) {
        u = trial;
        value = tv;
        step *= 1.5;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return u;
}

}  // namespace

CertReport certify_quadratic(const CVec& a, const CMat& A, const CVec& b, std::uint64_t sphere_count,
                             std::uint64_t seed, double tol) {
  const auto n = a.size();
  if (A.rows() != n || A.cols() != n || b.size() != n)
    throw Error(ErrorCode::InvalidArgument, "inconsistent dimensions for quadratic certification");
  std::vector<CVec> pts = sphere_samples(static_cast<int>(n), sphere_count, seed);
  for (Eigen::Index j = 0; j < n; ++j) pts.push_back(unit_vector(static_cast<int>(n), static_cast<int>(j)));

  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < pts.size(); ++i) ranked.emplace_back(quadratic_margin(A, b, pts[i]), i);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  const std::size_t seeds = std::min<std::size_t>(5, ranked.size());
  for (std::size_t k = 0; k < seeds; ++k) pts.push_back(refine_on_sphere(A, b, pts[ranked[k].second], 300));

  MarginAccumulator acc(tol);
  for (const CVec& u : pts) acc.add(quadratic_margin(A, b, u), {u});
  auto r = acc.finish();
  r.group_candidate = r.verdict == Verdict::Pass && r.max_abs_margin <= tol;
  return r;
}

CertReport certify_brfp_rate(const FieldFn& f, const CVec& p, double beta, const SampleSpec& spec, double tol) {
  require_dim(f, p);
  const auto pts = ball_samples(f.dim, spec.count, spec.seed, spec.radius_cap);
  return run_samples(pts.size(), tol,
                     [&](std::size_t i) { return margin_outcome(brfp_rate_margin(f, p, beta, pts[i]), {pts[i]}); });
}

CertReport certify_stationary(const FieldFn& f, const CVec& p, const SampleSpec& spec, double tol) {
  return certify_brfp_rate(f, p, 0.0, spec, tol);
}

namespace {

CVec project_into(const std::vector<double>& y, int n, double cap) {
  CVec z(n);
  for (int j = 0; j < n; ++j) z(j) = Complex(y[2 * j], y[2 * j + 1]);
  const double r = z.norm();
  if (r > cap) z *= cap / r;
  return z;
}

std::vector<double> flatten(const CVec& z) {
  std::vector<double> y;
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    y.push_back(z(j).real());
    y.push_back(z(j).imag());
  }
  return y;
}

// Seeds hugging p on the sphere of radius cap with tangential offset of
// order sqrt(1 - cap), where ratios that blow up near p are largest.
std::vector<CVec> near_boundary_seeds(const CVec& p, double cap, std::uint64_t seed) {
  const int n = static_cast<int>(p.size());
  std::vector<CVec> out;
  const double scale = std::sqrt(1.0 - cap);
  const double gammas[] = {0.25, 0.5, 1.0, std::sqrt(2.0), 2.0, 4.0};
  if (n == 1) {
    for (double g : gammas)
      for (double sgn : {-1.0, 1.0}) out.push_back(cap * p * std::polar(1.0, sgn * std::min(1.0, g * scale)));
    return out;
  }
  const auto dirs = sphere_samples(n, 24, seed ^ 0x9e3779b97f4a7c15ULL);
  for (const CVec& d : dirs) {
    CVec q = d - inner(d, p) * p;
    if (q.norm() < 1e-8) continue;
    q /= q.norm();
    for (double g : gammas) {
      const double tau = std::min(0.9, g * scale);
      out.push_back(cap * (std::sqrt(1.0 - tau * tau) * p + tau * q));
    }
  }
  return out;
}

}  // namespace

RateEstimate estimate_rate(const FieldFn& f, const CVec& p, const SampleSpec& spec) {
  require_dim(f, p);
  const int n = f.dim;
  auto ratio = [&](const CVec& z) {
    try {
      const double v = rate_ratio(f, p, z);
      return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  RateEstimate est;
  est.b = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 6; ++k) {
    const double cap = 1.0 - std::pow(10.0, -k);
    std::vector<CVec> cands = ball_samples(n, spec.count, spec.seed + static_cast<std::uint64_t>(k), cap);
    for (const CVec& s : sphere_samples(n, spec.count / 2 + 1, spec.seed + 100 + static_cast<std::uint64_t>(k)))
      cands.push_back(cap * s);
    for (CVec& s : near_boundary_seeds(p, cap, spec.seed)) cands.push_back(std::move(s));

    std::vector<double> vals(cands.size());
    parallel_for(cands.size(), [&](std::size_t i) { vals[i] = ratio(cands[i]); });
    std::vector<std::size_t> order(cands.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });

    double best = vals[order[0]];
    CVec arg = cands[order[0]];
    const double step = 0.5 * std::sqrt(1.0 - cap);
    for (std::size_t s = 0; s < std::min<std::size_t>(3, order.size()); ++s) {
      if (!std::isfinite(vals[order[s]])) break;
      const auto res = minimize_simplex([&](const std::vector<double>& y) { return ratio(project_into(y, n, cap)); },
                                        flatten(cands[order[s]]), step, 600);
      if (res.value < best) {
        best = res.value;
        arg = project_into(res.x, n, cap);
      }
    }
    est.caps.push_back(cap);
    est.minima.push_back(best);
    if (best < est.b) {
      est.b = best;
      est.argmin = arg;
    }
  }

  // Growth like c/(1-cap)^q on the last three radii signals divergence.
  const auto& m = est.minima;
  const std::size_t K = m.size();
  if (K >= 3 && m[K - 1] < m[K - 2] && m[K - 2] < m[K - 3] && m[K - 1] < -1.0 && m[K - 3] < 0.0 &&
      m[K - 1] / m[K - 3] >= 3.0) {
    est.unbounded = true;
    est.b = -std::numeric_limits<double>::infinity();
  }
  if (std::isinf(est.b) && est.b > 0) throw Error(ErrorCode::Evaluation, "rate ratio could not be evaluated on any sample");
  return est;
}

double estimate_rate_b(const FieldFn& f, const CVec& p, const SampleSpec& spec) { return estimate_rate(f, p, spec).b; }

CertReport verify_berkson_porta(const FieldFn& g, Complex b, const SampleSpec& spec, double tol) {
  if (g.dim != 1) throw Error(ErrorCode::UnsupportedDimension, "Berkson-Porta check needs a disc field");
  if (std::abs(b) > 1.0 + kBoundaryTolerance) throw Error(ErrorCode::Domain, "Berkson-Porta point must lie in the closed disc");
  const auto pts = ball_samples(1, spec.count, spec.seed, spec.radius_cap);
  return run_samples(pts.size(), tol, [&](std::size_t i) {
    const Complex z = pts[i](0);
    const Complex den = (z - b) * (std::conj(b) * z - 1.0);
    Outcome o;
    if (std::abs(den) < 1e-9) return o;
    const Complex pz = eval_checked(g, pts[i])(0) / den;
    return margin_outcome({pz.real(), std::abs(pz)}, {pts[i]});
  });
}

}  // namespace holodyn
