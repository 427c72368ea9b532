#include <doctest.h>

#include <cmath>
#include <random>

#include "holodyn/ball_geometry.hpp"
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

}  // namespace

TEST_CASE("green values") {
  const CVec o = CVec::Zero(2);
  CHECK(green(o, v2(0.5, 0.0)) == doctest::Approx(std::log(0.5)).epsilon(1e-15));
  CHECK(std::isinf(green(v2(0.1, 0.2), v2(0.1, 0.2))));
  CHECK(green(v2(0.1, 0.2), v2(0.1, 0.2)) < 0.0);

  std::mt19937_64 rng(101);
  double tanh_err = 0.0, sym_err = 0.0;
  for (int k = 0; k < 200; ++k) {
    const int n = 1 + k % 3;
    const CVec z = random_ball_point(n, rng, 0.95);
    const CVec w = random_ball_point(n, rng, 0.95);
    const double g = green(z, w);
    tanh_err = std::max(tanh_err, std::abs(g - std::log(std::tanh(kobayashi_distance(z, w)))));
    sym_err = std::max(sym_err, std::abs(g - green(w, z)));
  }
  CHECK(tanh_err <= 1e-11);
  CHECK(sym_err <= 1e-11);
}

TEST_CASE("green_differential") {
  const CVec z = v2(0.2, Complex(0, 0.3));
  const CVec w = v2(-0.4, 0.1);
  CHECK(green_differential(z, w, CVec::Zero(2), CVec::Zero(2)) == 0.0);
  CHECK_THROWS_AS(green_differential(z, z + v2(1e-8, 0.0), v2(1, 0), v2(0, 1)), Error);

  std::mt19937_64 rng(103);
  double fd_err = 0.0, add_err = 0.0;
  for (int k = 0; k < 200; ++k) {
    const int n = 1 + k % 3;
    const CVec a = random_ball_point(n, rng, 0.9);
    const CVec b = random_ball_point(n, rng, 0.9);
    if ((a - b).norm() < 0.05) continue;
    const CVec va = random_sphere_point(n, rng);
    const CVec vb = random_sphere_point(n, rng);
    const double h = 1e-6;
    const double fd = (green(a + h * va, b + h * vb) - green(a - h * va, b - h * vb)) / (2 * h);
    const double an = green_differential(a, b, va, vb);
    fd_err = std::max(fd_err, std::abs(an - fd));
    const CVec zero = CVec::Zero(n);
    add_err = std::max(add_err, std::abs(an - green_differential(a, b, va, zero) - green_differential(a, b, zero, vb)));
  }
  CHECK(fd_err <= 1e-7);
  CHECK(add_err <= 1e-12);
}

TEST_CASE("poisson values") {
  const CVec e1 = unit_vector(2, 0);
  CHECK(poisson(e1, CVec::Zero(2)) == -1.0);
  CHECK(poisson(e1, v2(0.5, 0.0)) == doctest::Approx(-3.0).epsilon(1e-15));
  for (Complex zeta : {Complex(0.3, 0.1), Complex(-0.5, 0.4)}) {
    const double expected = -(1 - std::norm(zeta)) / std::norm(1.0 - zeta);
    CHECK(poisson(d1(1.0), d1(zeta)) == doctest::Approx(expected).epsilon(1e-15));
  }
  CHECK(poisson(d1(1.0), d1(0.0)) == -1.0);

  // Radial decay towards a different boundary point.
  const CVec q = -e1;
  double prev = -1.0;
  bool monotone = true;
  for (int j = 1; j <= 6; ++j) {
    const double r = 1.0 - std::pow(10.0, -j);
    const double u = poisson(e1, r * q);
    if (!(u > prev)) monotone = false;
    prev = u;
  }
  CHECK(monotone);
  CHECK(std::abs(prev) <= 1e-4);
}

TEST_CASE("poisson_differential") {
  const CVec e1 = unit_vector(2, 0);
  CHECK(poisson_differential(e1, CVec::Zero(2), e1) == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(poisson_differential(e1, v2(0.3, 0.1), CVec::Zero(2)) == 0.0);

  std::mt19937_64 rng(107);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const int n = 1 + k % 3;
    const CVec p = random_sphere_point(n, rng);
    const CVec z = random_ball_point(n, rng, 0.8);
    const CVec v = random_sphere_point(n, rng);
    const double fd = oracle::directional([&](const CVec& x) { return poisson(p, x); }, z, v);
    const double an = poisson_differential(p, z, v);
    worst = std::max(worst, std::abs(an - fd) / std::max(1.0, std::abs(poisson(p, z))));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("horospheres") {
  const CVec e1 = unit_vector(2, 0);
  const CVec z = v2(0.5, 0.0);
  CHECK(horosphere_contains({e1, 0.5}, z));
  CHECK_FALSE(horosphere_contains({e1, 0.3}, z));
  CHECK(poisson(e1, z) < -1.0 / 0.5);
  CHECK_FALSE(poisson(e1, z) < -1.0 / 0.3);
  CHECK(horosphere_contains({e1, 1.0001}, CVec::Zero(2)));
  CHECK_FALSE(horosphere_contains({e1, 1.0}, CVec::Zero(2)));
  CHECK_THROWS_AS(horosphere_contains({e1, 0.0}, z), Error);

  std::mt19937_64 rng(109);
  int disagreements = 0;
  for (int k = 0; k < 10000; ++k) {
    const CVec p = random_sphere_point(2, rng);
    const CVec x = random_ball_point(2, rng, 0.999);
    const double r = 0.1 + 10.0 * uniform01(rng);
    if (horosphere_contains({p, r}, x) != (poisson(p, x) < -1.0 / r)) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("busemann") {
  const CVec e1 = unit_vector(2, 0);
  CHECK(busemann(e1, CVec::Zero(2)) == 0.0);
  CHECK(busemann(e1, v2(0.5, 0.0)) == doctest::Approx(0.5 * std::log(1.0 / 3.0)).epsilon(1e-15));

  // Defining limit k(z, r p) - k(0, r p) as r -> 1, extrapolated in (1 - r).
  std::mt19937_64 rng(113);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const CVec p = random_sphere_point(2, rng);
    const CVec x = random_ball_point(2, rng, 0.9);
    auto diff = [&](int j) {
      const double r = 1.0 - std::pow(10.0, -j);
      return kobayashi_distance(x, CVec(r * p)) - kobayashi_distance(CVec::Zero(2), CVec(r * p));
    };
    // Error is linear in 10^-j, so one Richardson step removes it.
    const double d7 = diff(7);
    const double d8 = diff(8);
    const double extrapolated = d8 + (d8 - d7) / 9.0;
    worst = std::max(worst, std::abs(extrapolated - busemann(p, x)));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("K-regions") {
  const CVec e1 = unit_vector(2, 0);
  for (double r : {1.01, 2.0, 10.0}) {
    CHECK(kregion_contains({e1, r}, CVec::Zero(2)));
    CHECK(kregion_contains({e1, r}, v2(0.5, 0.0)));
  }
  for (int j = 1; j <= 10; ++j) {
    const double r = 1.0 - std::pow(10.0, -j);
    CHECK(kregion_contains({e1, 2.0}, r * e1));
  }
  CHECK_FALSE(kregion_contains({e1, 2.0}, v2(0.0, 0.99)));
  CHECK_THROWS_AS(kregion_contains({e1, 1.0}, CVec::Zero(2)), Error);
}

TEST_CASE("poisson_pullback_factor") {
  const CVec e1 = unit_vector(2, 0);
  const auto axis = geodesic_device(BallPoint(CVec::Zero(2)), BoundaryPoint(e1));
  CHECK(poisson_pullback_factor(axis) == doctest::Approx(1.0).epsilon(1e-14));
  const auto shifted = geodesic_device(BallPoint(v2(0.5, 0.0)), BoundaryPoint(e1));
  CHECK(poisson_pullback_factor(shifted) == doctest::Approx(3.0).epsilon(1e-12));

  std::mt19937_64 rng(127);
  bool positive = true;
  for (int k = 0; k < 100; ++k) {
    const auto dev = geodesic_device(BallPoint(random_ball_point(2, rng, 0.9)), BoundaryPoint(random_sphere_point(2, rng)));
    if (!(poisson_pullback_factor(dev) > 0.0)) positive = false;
  }
  CHECK(positive);
}

TEST_CASE("julia_map_check") {
  const double theta = 0.8;
  const Complex rot = std::polar(1.0, theta);
  const CVec e1 = unit_vector(2, 0);
  const auto samples = ball_samples(2, 500, 1, 0.999);
  const auto r = julia_map_check([&](const CVec& z) { return CVec(rot * z); }, e1, CVec(rot * e1), 1.0, samples);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(std::abs(r.min_margin) <= 1e-12);

  const auto disc = ball_samples(1, 500, 1, 0.99);
  const auto flow = julia_map_check([](const CVec& z) { return d1(oracle::disc_hyperbolic_flow(z(0), 1.0)); }, d1(1.0),
                                    d1(1.0), std::exp(-2.0), disc);
  CHECK(flow.verdict == Verdict::Pass);

  // A coefficient below the true dilatation is violated at the origin.
  const auto bad = julia_map_check([](const CVec& z) { return d1(oracle::disc_hyperbolic_flow(z(0), 1.0)); }, d1(1.0),
                                   d1(1.0), std::exp(-2.5), disc);
  CHECK(bad.verdict == Verdict::Fail);

  const auto escape = julia_map_check([](const CVec& z) { return CVec(2.0 * z); }, e1, e1, 1.0, samples);
  CHECK(escape.verdict != Verdict::Pass);
}
