// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "battery.hpp"
#include "holodyn/boundary_analysis.hpp"
#include "holodyn/certification.hpp"
#include "holodyn/flow.hpp"
#include "holodyn/holodyn.h"
#include "holodyn/kernels.hpp"
#include "holodyn/resolvent.hpp"
#include "holodyn/sampling.hpp"
#include "holodyn/scenarios.hpp"
#include "oracles.hpp"

using namespace holodyn;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

CVec d1(Complex a) { return CVec::Constant(1, a); }

SampleSpec samples(std::uint64_t count, std::uint64_t seed = 1) {
  SampleSpec s;
  s.count = count;
  s.seed = seed;
  return s;
}

ProjectionDevice axis_device(const CVec& p) { return geodesic_device(BallPoint(CVec::Zero(p.size())), BoundaryPoint(p)); }

// (p, beta) pairs a catalog scenario asserts as boundary rates.
std::vector<std::pair<CVec, double>> certified_rates(const Scenario& s) {
  std::vector<std::pair<CVec, double>> out;
  for (const auto& e : s.expectations) {
    if (e.kind == "dilatation" || (e.kind == "certify_brfp_rate" && e.params.value("verdict", "pass") == "pass")) {
      const double beta = e.params.at("beta").get<double>();
      const CVec p = s.point(e.params.at("point").get<std::string>());
      bool dup = false;
      for (const auto& [q, b] : out) dup = dup || ((q - p).norm() == 0.0 && b == beta);
      if (!dup) out.emplace_back(p, beta);
    }
  }
  return out;
}

Outcome kernel_identities() {
  Outcome o;
  double worst = 0.0;
  std::mt19937_64 rng(1001);
  for (int k = 0; k < 200; ++k) {
    const int n = 1 + k % 4;
    const CVec z = random_ball_point(n, rng, 0.95);
    const CVec w = random_ball_point(n, rng, 0.95);
    worst = std::max(worst, std::abs(green(z, w) - std::log(std::tanh(kobayashi_distance(z, w)))));
  }
  o.require(worst <= 1e-11, "G = log tanh k");
  o.note("max |G - log tanh k| = " + sci(worst) + " on 200 pairs");

  std::size_t mismatches = 0;
  std::mt19937_64 rng2(1002);
  for (int k = 0; k < 10000; ++k) {
    const int n = 1 + k % 3;
    const CVec p = random_sphere_point(n, rng2);
    const CVec z = random_ball_point(n, rng2, 0.999);
    const double r = std::exp(4.0 * uniform01(rng2) - 2.0);
    if (horosphere_contains({p, r}, z) != (poisson(p, z) < -1.0 / r)) ++mismatches;
  }
  o.require(mismatches == 0, "horosphere sublevel equivalence");
  o.note(std::to_string(mismatches) + " horosphere mismatches in 10^4");

  bool exact = true;
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k < 10; ++k) exact = exact && poisson(random_sphere_point(n, rng), CVec::Zero(n)) == -1.0;
  o.require(exact, "u(0) = -1");
  return o;
}

Outcome generator_consistency() {
  Outcome o;
  std::size_t agree = 0, total = 0;
  for (const auto& c : battery::generators()) {
    const Verdict want = c.generator ? Verdict::Pass : Verdict::Fail;
    const auto g = certify_generator_green(c.f, samples(1000));
    const auto b = certify_generator_ball(c.f, samples(1000));
    const auto s = certify_generator_shift(c.f, samples(1000));
    ++total;
    if (g.verdict == want && b.verdict == want && s.verdict == want)
      ++agree;
    else
      o.require(false, c.name);
  }
  o.note(std::to_string(agree) + "/" + std::to_string(total) + " battery fields with three agreeing verdicts");
  const auto minus = battery::text_field("(-z1, -z2)");
  const auto rot = battery::text_field("(1i*z1, 1i*z2)");
  const auto plus = battery::text_field("(z1, z2)");
  o.require(certify_generator_green(minus, samples(1000)).verdict == Verdict::Pass, "-z passes");
  o.require(certify_generator_green(rot, samples(1000)).verdict == Verdict::Pass, "iz passes");
  const auto fail = certify_generator_green(plus, samples(1000));
  o.require(fail.verdict == Verdict::Fail && !fail.witness.empty(), "+z fails with witness");
  return o;
}

Outcome dues() {
  Outcome o;
  const FieldFn f = find_scenario("dues").field().as_function();
  const auto g = certify_group(f, samples(1000));
  o.require(g.verdict == Verdict::Pass && g.max_abs_margin <= 1e-9, "certify_group");
  o.note("group max |margin| = " + sci(g.max_abs_margin));
  const CVec e1 = unit_vector(2, 0);
  const auto scan = brfp_scan(f, e1);
  o.require(scan.verdict == BrfpVerdict::NotBrfp, "brfp_scan not-BRFP");
  o.note(std::string("scan ") + brfp_verdict_name(scan.verdict));
  const auto slope = radial_slope(geodesic_generator(f, axis_device(e1)));
  o.require(slope.extrapolated && std::abs(*slope.extrapolated) <= 1e-8, "axis slope 0");
  if (slope.extrapolated) o.note("axis slope " + sci(std::abs(*slope.extrapolated)));
  return o;
}

Outcome unos() {
  Outcome o;
  const VectorField base = find_scenario("unos").field();
  const CVec e1 = unit_vector(2, 0);
  o.require(certify_stationary(base.as_function(), e1, samples(1000)).verdict == Verdict::Pass, "stationary at e1");
  const double beta = 0.5, s = std::sqrt(2.0 * beta);
  const FieldFn tilde = conjugate_field(base, parabolic_automorphism(beta, 0.0)).as_function();
  const auto slope = radial_slope(geodesic_generator(tilde, axis_device(e1)));
  const double want = -s * s;
  o.require(slope.extrapolated && std::abs(*slope.extrapolated - want) <= 1e-4, "eta-slice slope -s^2");
  if (slope.extrapolated) o.note("slope " + sci(slope.extrapolated->real()) + " vs " + sci(want));
  const std::vector<double> times{0.25, 0.5, 1.0, 1.5};
  for (const auto& [name, f] : std::vector<std::pair<std::string, FieldFn>>{{"F", base.as_function()}, {"F~", tilde}}) {
    const auto fit = dilatation_semigroup(f, times, axis_device(e1));
    o.require(fit.verdict == BrfpVerdict::Brfp && std::abs(fit.beta) <= 1e-3, "dilatation beta 0 for " + name);
    o.note("beta(" + name + ") = " + sci(fit.beta));
  }
  return o;
}

Outcome disc_hyperbolic() {
  Outcome o;
  const FieldFn f = find_scenario("disc_hyperbolic").field().as_function();
  double worst = 0.0;
  std::vector<double> times;
  for (int k = 1; k <= 20; ++k) times.push_back(0.25 * k);
  std::mt19937_64 rng(1005);
  for (int k = 0; k < 20; ++k) {
    const CVec z = random_ball_point(1, rng, 0.9);
    const GridFlow g = flow_on_grid(f, z, times);
    for (std::size_t i = 0; i < times.size(); ++i)
      worst = std::max(worst, std::abs(g.points[i](0) - oracle::disc_hyperbolic_flow(z(0), times[i])));
  }
  o.require(worst <= 1e-8, "flow vs tanh");
  o.note("flow error " + sci(worst));
  const std::vector<double> fit_times{0.25, 0.5, 1.0, 1.5};
  const auto plus = dilatation_semigroup(f, fit_times, axis_device(d1(1.0)));
  const auto minus = dilatation_semigroup(f, fit_times, axis_device(d1(-1.0)));
  o.require(std::abs(plus.beta + 2.0) <= 1e-3, "beta(1) = -2");
  o.require(std::abs(minus.beta - 2.0) <= 1e-3, "beta(-1) = 2");
  const double b = estimate_rate_b(f, d1(1.0), samples(1000));
  o.require(std::abs(b - 2.0) <= 1e-3, "b(1) = 2");
  o.require(std::abs(b + plus.beta) <= 1e-3, "b = -beta");
  o.note("beta(1) = " + sci(plus.beta) + ", beta(-1) = " + sci(minus.beta) + ", b(1) = " + sci(b));
  return o;
}

Outcome resolvent() {
  Outcome o;
  const VectorField f = find_scenario("disc_hyperbolic").field();
  const auto cf = resolvent_vs_closed_form({0.25, 0.5, 1.0, 2.0}, {0.0, 0.3, -0.3, Complex(0, 0.5)});
  o.require(cf.failures == 0 && cf.max_discrepancy <= 1e-10, "closed form");
  o.note("closed-form gap " + sci(cf.max_discrepancy));
  double oracle_gap = 0.0;
  for (double t : {0.25, 0.5, 1.0, 2.0})
    for (Complex z : {Complex(0.0), Complex(0.3), Complex(-0.3), Complex(0, 0.5)})
      oracle_gap = std::max(oracle_gap, std::abs(resolvent_point(f, d1(z), t).w(0) - oracle::disc_hyperbolic_resolvent(z, t)));
  o.require(oracle_gap <= 1e-10, "independent closed form");
  const double golden = std::abs(resolvent_point(f, d1(0.0), 1.0).w(0) - (std::sqrt(5.0) - 1.0) / 2.0);
  o.require(golden <= 1e-10, "G_1(0)");
  const double probe = std::abs(resolvent_point(f, d1(-(1.0 - 1e-6)), 1.0).w(0));
  o.require(probe <= 1e-3, "radial probe at -1");
  o.note("|G_1(-r)| = " + sci(probe) + " at r = 1 - 1e-6");
  double limit = 0.0;
  limit = std::max(limit, resolvent_generator_limit(f, d1(0.0)).error);
  limit = std::max(limit, resolvent_generator_limit(parse_field("(-z1, -z2)", 2), battery::v2(0.5, 0)).error);
  limit = std::max(limit, resolvent_generator_limit(find_scenario("unos").field(), battery::v2(0.3, 0.4)).error);
  o.require(limit <= 1e-7, "generator limit");
  o.note("generator-limit error " + sci(limit));
  return o;
}

Outcome flow_invariants() {
  Outcome o;
  double semigroup = 0.0, kobayashi = 0.0, energy = 0.0;
  std::size_t errors = 0;
  const std::vector<double> grid{0.0, 0.5, 1.0, 2.0, 4.0};
  for (const auto& s : list_scenarios()) {
    if (!s.generator) continue;
    const FieldFn f = s.field().as_function();
    std::mt19937_64 rng(2000 + s.dim);
    try {
      for (int k = 0; k < 50; ++k) {
        const CVec z = random_ball_point(s.dim, rng, 0.9);
        const double t = 2.0 * uniform01(rng), u = 2.0 * uniform01(rng);
        semigroup = std::max(semigroup, semigroup_check(f, z, t, u).worst);
      }
      for (int k = 0; k < 10; ++k) {
        const CVec z = random_ball_point(s.dim, rng, 0.9);
        const CVec w = random_ball_point(s.dim, rng, 0.9);
        const auto c = kobayashi_monotone_check(f, z, w, grid, 1e-10, precise_flow_options());
        if (!c.pass) kobayashi = std::max(kobayashi, c.worst);
      }
      for (const auto& [p, beta] : certified_rates(s)) {
        for (int k = 0; k < 10; ++k) {
          const CVec z = random_ball_point(s.dim, rng, 0.9);
          const auto c = energy_check(f, p, beta, z, grid, 1e-8, precise_flow_options());
          if (!c.pass) energy = std::max(energy, c.worst);
        }
      }
    } catch (const Error& e) {
      ++errors;
      o.require(false, s.name + ": " + e.what());
    }
  }
  o.require(semigroup <= 1e-8, "semigroup");
  o.require(kobayashi == 0.0, "Kobayashi monotone");
  o.require(energy == 0.0, "energy inequality");
  o.note("semigroup worst " + sci(semigroup) + ", Kobayashi violation " + sci(kobayashi) + ", energy violation " + sci(energy));
  return o;
}

Outcome projected_closure() {
  Outcome o;
  double worst_margin = 0.0, worst_transfer = 0.0;
  const CVec one = d1(1.0);
  for (const auto& s : list_scenarios()) {
    if (!s.generator) continue;
    const FieldFn f = s.field().as_function();
    std::mt19937_64 rng(3000 + s.name.size());
    for (int k = 0; k < 50; ++k) {
      const CVec p = random_sphere_point(s.dim, rng);
      const auto dev = geodesic_device(BallPoint(random_ball_point(s.dim, rng, 0.8)), BoundaryPoint(p));
      const auto cert = certify_generator_green(geodesic_generator_field(f, dev), samples(200, 1 + k), 1e-8);
      worst_margin = std::min(worst_margin, cert.min_margin);
      o.require(cert.verdict == Verdict::Pass, s.name + " device " + std::to_string(k));
      const double a = poisson_pullback_factor(dev);
      const auto g = geodesic_generator(f, dev);
      const double beta = 4.0 * uniform01(rng) - 2.0;
      for (int j = 0; j < 4; ++j) {
        const Complex zeta = random_ball_point(1, rng, 0.9)(0);
        const CVec z = dev.phi(zeta);
        const double lhs = poisson_differential(one, d1(zeta), d1(g(zeta))) + beta * poisson(one, d1(zeta));
        const double rhs = (poisson_differential(p, z, f(z)) + beta * poisson(p, z)) / a;
        worst_transfer = std::max(worst_transfer, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
      }
    }
  }
  o.require(worst_margin >= -1e-8, "projected margins");
  o.require(worst_transfer <= 1e-8, "rate transfer");
  o.note("min projected margin " + sci(worst_margin) + ", rate-transfer gap " + sci(worst_transfer));
  return o;
}

Outcome quadratic() {
  Outcome o;
  const CMat id = CMat::Identity(2, 2);
  CMat rot = CMat::Zero(2, 2);
  rot(0, 0) = Complex(0, 1.0 / 3.0);
  rot(1, 1) = Complex(0, -1.0);
  const CVec zero = CVec::Zero(2);
  struct Item {
    CMat A;
    Verdict verdict;
    double margin;
    bool group;
  };
  for (const Item& it : {Item{id, Verdict::Pass, 1.0, false}, Item{-id, Verdict::Fail, -1.0, false},
                         Item{rot, Verdict::Pass, 0.0, true}}) {
    const auto r = certify_quadratic(zero, it.A, zero);
    o.require(r.verdict == it.verdict && std::abs(r.min_margin - it.margin) <= 1e-9 && r.group_candidate == it.group,
              "margin " + sci(it.margin));
    o.note(std::string(verdict_name(r.verdict)) + " " + sci(r.min_margin) + (r.group_candidate ? " group" : ""));
  }
  return o;
}

std::vector<std::string> capi_records(const std::function<hd_status(hd_report**)>& call) {
  hd_report* r = nullptr;
  std::vector<std::string> out;
  if (call(&r) != HD_OK) return {"error"};
  for (std::size_t i = 0; i < hd_report_record_count(r); ++i) out.push_back(hd_report_record(r, i));
  out.push_back(hd_report_csv(r));
  hd_report_free(r);
  return out;
}

Outcome determinism() {
  Outcome o;
  hd_options opt;
  hd_options_default(&opt);
  opt.seed = 20;
  opt.samples = 500;
  hd_field* f = nullptr;
  hd_field* hyper = nullptr;
  if (hd_field_parse("(-z1 + 0.2*z2^2, -z2 + 0.1i*z1*z2)", 2, &f) != HD_OK ||
      hd_field_from_scenario("disc_hyperbolic", &hyper) != HD_OK) {
    o.require(false, "field setup");
    return o;
  }
  const hd_complex e1[2] = {{1, 0}, {0, 0}};
  const hd_complex z0[1] = {{0.3, 0.2}};
  const std::vector<std::function<hd_status(hd_report**)>> calls{
      [&](hd_report** r) { return hd_certify(f, HD_CERT_ALL, &opt, r); },
      [&](hd_report** r) { return hd_boundary_scan(f, e1, &opt, r); },
      [&](hd_report** r) { return hd_boundary_rate(f, e1, &opt, r); },
      [&](hd_report** r) { return hd_flow(hyper, z0, 3.0, &opt, r); },
      [&](hd_report** r) { return hd_scenario_run("unos", &opt, r); },
      [&](hd_report** r) { return hd_scenario_run("disc_hyperbolic", &opt, r); }};
  std::size_t identical = 0;
  for (const auto& call : calls) {
    const auto a = capi_records(call);
    const auto b = capi_records(call);
    if (a == b && a.front() != "error") ++identical;
  }
  hd_field_free(f);
  hd_field_free(hyper);
  o.require(identical == calls.size(), "byte-identical reports");
  o.note(std::to_string(identical) + "/" + std::to_string(calls.size()) + " reports byte-identical across runs");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"kernel identities", kernel_identities},
      {"generator-characterization consistency", generator_consistency},
      {"dues: group generator without BRFP", dues},
      {"unos: stationary point and slice slopes", unos},
      {"disc hyperbolic flow and boundary rates", disc_hyperbolic},
      {"resolvent", resolvent},
      {"flow invariants on catalog generators", flow_invariants},
      {"projected-generator closure", projected_closure},
      {"quadratic-field criterion", quadratic},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::printf("%s  %2zu  %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures ? 1 : 0;
}
