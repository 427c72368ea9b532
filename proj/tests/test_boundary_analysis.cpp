#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "holodyn/boundary_analysis.hpp"
#include "holodyn/certification.hpp"
#include "holodyn/kernels.hpp"
#include "holodyn/sampling.hpp"
#include "oracles.hpp"

using namespace holodyn;

namespace {

CVec v2(Complex a, Complex b) {
  CVec z(2);
  z << a, b;
  return z;
}

CVec d1(Complex a) { return CVec::Constant(1, a); }

FieldFn field(const std::string& text, int dim = 2) { return parse_field(text, dim).as_function(); }

const char* kDues = "(-2i/3*z2, -5i/3*z2 - 2i/3*z1)";
const char* kUnos = "(0, -z2/(1-z1))";

FieldFn unos_conjugated(double beta) {
  return conjugate_field(parse_field(kUnos, 2), parabolic_automorphism(beta, 0.0)).as_function();
}

ProjectionDevice axis() { return geodesic_device(BallPoint(CVec::Zero(2)), BoundaryPoint(unit_vector(2, 0))); }

}  // namespace

TEST_CASE("geodesic_generator") {
  const auto dues = geodesic_generator(field(kDues), axis());
  for (Complex z : {Complex(0.1), Complex(-0.5, 0.3), Complex(0, 0.9)}) CHECK(std::abs(dues(z)) == 0.0);
  const auto minus = geodesic_generator(field("(-z1, -z2)"), axis());
  for (Complex z : {Complex(0.1), Complex(-0.5, 0.3)}) CHECK(std::abs(minus(z) + z) <= 1e-15);

  for (double beta : {0.5, 1.0}) {
    const double s = std::sqrt(2 * beta);
    const auto f = geodesic_generator(unos_conjugated(beta), axis());
    for (double r : {0.2, 0.7, 0.99}) CHECK(std::abs(f(r) - (beta * (1 - r) + 1) * (-s * s * (r - 1))) <= 1e-12);
    // Along the fixed slice eta^{-1}(zeta, 0) the projected field vanishes.
    const auto slice = ProjectionDevice::from_carrier(parabolic_automorphism(beta, 0.0));
    const auto g = geodesic_generator(unos_conjugated(beta), slice);
    for (Complex z : {Complex(0.2), Complex(0.6, -0.3)}) CHECK(std::abs(g(z)) <= 1e-12);
  }
}

TEST_CASE("radial_slope") {
  const auto a = radial_slope([](Complex z) { return 1.0 - z * z; });
  REQUIRE(a.extrapolated);
  CHECK(std::abs(*a.extrapolated + 2.0) <= 1e-10);
  CHECK(a.residual <= 1e-10);
  CHECK(a.radii.size() == 11);
  CHECK(a.radii.front() == 1.0 - 0.125);
  for (std::size_t k = 0; k < a.values.size(); ++k) CHECK(std::abs(a.values[k] + (1.0 + a.radii[k])) <= 1e-12);

  const auto b = radial_slope([](Complex z) { return (z - 1.0) * (z - 1.0); });
  REQUIRE(b.extrapolated);
  CHECK(std::abs(*b.extrapolated) <= 1e-10);

  const auto c = radial_slope([](Complex) { return Complex(0.0); });
  CHECK(c.bounded);
  REQUIRE(c.extrapolated);
  CHECK(*c.extrapolated == Complex(0.0));
  CHECK(c.residual >= 0.0);

  // Divergent ratios are flagged and carry no limit.
  const auto d = radial_slope([](Complex z) { return 1.0 / (1.0 - z); });
  CHECK_FALSE(d.bounded);
  CHECK_FALSE(d.extrapolated);
  const auto e = radial_slope([](Complex z) { return std::exp(1.0 / (1.0 - z)); });
  CHECK_FALSE(e.bounded);

  std::ostringstream os;
  write_slope_csv(os, a);
  CHECK(os.str().rfind("r,re_value,im_value\n", 0) == 0);
}

TEST_CASE("growth test on exact 1/(1-r) divergence with an offset") {
  std::vector<double> q;
  for (double r : dyadic_radii()) q.push_back(1.0 / (1.0 - r) + 50.0);
  CHECK(growth_unbounded(q));
  std::vector<double> flat(11, 2.0);
  CHECK_FALSE(growth_unbounded(flat));
}

TEST_CASE("brfp_scan") {
  const auto tilde = brfp_scan(unos_conjugated(0.5), unit_vector(2, 0));
  CHECK(tilde.verdict == BrfpVerdict::Brfp);
  CHECK(std::abs(tilde.beta) <= 1e-8);
  bool saw_minus_s2 = false;
  for (const auto& d : tilde.devices) {
    REQUIRE(d.slope.extrapolated);
    if (std::abs(*d.slope.extrapolated + 1.0) <= 1e-8) saw_minus_s2 = true;
    CHECK(std::abs(d.slope.extrapolated->imag()) <= 1e-6);
    CHECK(d.slope.extrapolated->real() <= 1e-8);
  }
  CHECK(saw_minus_s2);

  const auto dues = brfp_scan(field(kDues), unit_vector(2, 0));
  CHECK(dues.verdict == BrfpVerdict::NotBrfp);
  CHECK(dues.rate_b == -std::numeric_limits<double>::infinity());
  // The axis device alone sees slope 0.
  REQUIRE(dues.devices.front().slope.extrapolated);
  CHECK(std::abs(*dues.devices.front().slope.extrapolated) <= 1e-12);

  const auto disc = brfp_scan(field("1 - z1^2", 1), d1(-1.0));
  CHECK(disc.verdict == BrfpVerdict::Brfp);
  CHECK(disc.beta == doctest::Approx(2.0).epsilon(1e-8));

  CHECK(brfp_scan(field("1/(z1 - 1)", 1), d1(1.0)).verdict == BrfpVerdict::NotBrfp);
  const auto failing = brfp_scan(field("1/(z1 - z1)", 1), d1(1.0));
  CHECK(failing.verdict == BrfpVerdict::Inconclusive);
}

TEST_CASE("brfp_check_map") {
  const auto hyper = field("1 - z1^2", 1);
  const auto disc_axis = geodesic_device(BallPoint(d1(0.0)), BoundaryPoint(d1(1.0)));
  const auto a = brfp_check_map([&](const CVec& z) { return flow_point(hyper, z, 1.0, precise_flow_options()); },
                                disc_axis);
  REQUIRE(a.extrapolated);
  CHECK(std::abs(a.extrapolated->real() - std::exp(-2.0)) <= 1e-4);
  CHECK(std::abs(a.extrapolated->real() - 0.1353353) <= 1e-4);

  const auto id = brfp_check_map([](const CVec& z) { return z; }, axis());
  CHECK(std::abs(*id.extrapolated - 1.0) <= 1e-14);

  const auto tilde = unos_conjugated(0.5);
  const auto b = brfp_check_map([&](const CVec& z) { return flow_point(tilde, z, 1.0, precise_flow_options()); },
                                axis());
  REQUIRE(b.extrapolated);
  CHECK(std::abs(*b.extrapolated - 1.0) <= 1e-4);
}

TEST_CASE("dilatation_semigroup") {
  const std::vector<double> times = {0.25, 0.5, 1.0, 1.5};
  const auto hyper = field("1 - z1^2", 1);
  const auto plus = dilatation_semigroup(hyper, times, geodesic_device(BallPoint(d1(0.0)), BoundaryPoint(d1(1.0))));
  CHECK(plus.verdict == BrfpVerdict::Brfp);
  CHECK(std::abs(plus.beta + 2.0) <= 1e-3);
  for (std::size_t i = 0; i < times.size(); ++i)
    CHECK(std::abs(plus.alphas[i].extrapolated->real() - std::exp(-2.0 * times[i])) <= 1e-4);

  const auto minus = dilatation_semigroup(hyper, times, geodesic_device(BallPoint(d1(0.0)), BoundaryPoint(d1(-1.0))));
  CHECK(minus.verdict == BrfpVerdict::Brfp);
  CHECK(std::abs(minus.beta - 2.0) <= 1e-3);

  const auto tilde = dilatation_semigroup(unos_conjugated(0.5), times, axis());
  CHECK(tilde.verdict == BrfpVerdict::Brfp);
  CHECK(std::abs(tilde.beta) <= 1e-3);
}

TEST_CASE("consistency triangle") {
  struct Item {
    FieldFn f;
    CVec p;
  };
  std::vector<Item> items = {{field("1 - z1^2", 1), d1(1.0)}, {field("1 - z1^2", 1), d1(-1.0)},
                             {unos_conjugated(0.5), unit_vector(2, 0)}};
  const std::vector<double> times = {0.5, 1.0};
  for (const auto& it : items) {
    const auto scan = brfp_scan(it.f, it.p);
    REQUIRE(scan.verdict == BrfpVerdict::Brfp);
    const auto dev = geodesic_device(BallPoint(CVec::Zero(it.p.size())), BoundaryPoint(it.p));
    const auto fit = dilatation_semigroup(it.f, times, dev);
    SampleSpec spec;
    const double b = estimate_rate_b(it.f, it.p, spec);
    CHECK(std::abs(fit.beta + b) <= 1e-3);
    CHECK(std::abs(scan.beta + b) <= 1e-3);
  }
}

TEST_CASE("nt_limit") {
  const auto unos = parse_field(kUnos, 2);
  const auto f1 = nt_limit([&](const CVec& z) { return unos.eval(z)(0); }, unit_vector(2, 0));
  CHECK(f1.agree);
  REQUIRE(f1.limit);
  CHECK(std::abs(*f1.limit) <= 1e-12);

  const auto f2 = nt_limit([&](const CVec& z) { return unos.eval(z)(1); }, unit_vector(2, 0));
  CHECK_FALSE(f2.agree);
  CHECK_FALSE(f2.limit);
  for (const auto& r : f2.rays) CHECK(std::abs(*r.estimate.extrapolated - std::tan(r.angle)) <= 1e-10);

  const auto c = nt_limit([](const CVec&) { return Complex(0.3, -0.2); }, d1(std::polar(1.0, 0.4)));
  CHECK(c.agree);
  CHECK(std::abs(*c.limit - Complex(0.3, -0.2)) <= 1e-14);

  const auto d = nt_limit([](const CVec& z) { return 1.0 / (1.0 - z(0)); }, d1(1.0));
  CHECK(d.diverges);
  CHECK_FALSE(d.limit);
}

TEST_CASE("projected generators are disc generators") {
  const std::vector<FieldFn> gens = {field("(-z1, -z2)"), field("(1i*z1, 1i*z2)"), field(kUnos), unos_conjugated(0.5),
                                     field(kDues), field("(1 - z1^2, -z1*z2)")};
  std::mt19937_64 rng(401);
  SampleSpec spec;
  spec.count = 200;
  int failures = 0;
  for (const auto& f : gens) {
    for (int k = 0; k < 50; ++k) {
      const auto dev = geodesic_device(BallPoint(random_ball_point(2, rng, 0.8)), BoundaryPoint(random_sphere_point(2, rng)));
      if (certify_generator_green(geodesic_generator_field(f, dev), spec).verdict != Verdict::Pass) ++failures;
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("rate transfer along geodesics") {
  std::mt19937_64 rng(409);
  const std::vector<std::pair<FieldFn, double>> items = {{field(kUnos), 0.0}, {unos_conjugated(0.5), 0.0},
                                                         {field(kDues), 1.5}, {field("(-z1, -z2)"), -0.7}};
  const CVec one = d1(1.0);
  double worst = 0.0;
  for (const auto& [f, beta] : items) {
    for (int k = 0; k < 20; ++k) {
      const CVec p = k % 2 ? random_sphere_point(2, rng) : unit_vector(2, 0);
      const auto dev = geodesic_device(BallPoint(random_ball_point(2, rng, 0.8)), BoundaryPoint(p));
      const double a = poisson_pullback_factor(dev);
      const auto g = geodesic_generator(f, dev);
      const Complex zeta = random_ball_point(1, rng, 0.9)(0);
      const CVec z = dev.phi(zeta);
      const double lhs = poisson_differential(one, d1(zeta), d1(g(zeta))) + beta * poisson(one, d1(zeta));
      const double rhs = (poisson_differential(p, z, f(z)) + beta * poisson(p, z)) / a;
      worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
    }
  }
  CHECK(worst <= 1e-8);
}
