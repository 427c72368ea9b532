#include <doctest.h>

#include <cmath>
#include <numbers>
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

ProjectiveAutomorphism random_automorphism(int n, std::mt19937_64& rng) {
  const BallPoint a(random_ball_point(n, rng, 0.9));
  // Random unitary from the QR factorization of a random complex matrix.
  CMat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(uniform01(rng) - 0.5, uniform01(rng) - 0.5);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  return ProjectiveAutomorphism::unitary(q).compose(moebius_center(a));
}

}  // namespace

TEST_CASE("moebius_center basics") {
  const auto id = moebius_center(BallPoint(CVec::Zero(3)));
  CHECK((id.matrix() - CMat::Identity(4, 4)).norm() == 0.0);

  std::mt19937_64 rng(11);
  for (int k = 0; k < 20; ++k) {
    const CVec a = random_ball_point(2, rng, 0.95);
    const auto t = moebius_center(BallPoint(a));
    CHECK(t.apply(a).norm() < 1e-14);
    CHECK(t.validation_defect() < 1e-10);
    const auto tinv = t.inverse();
    for (int j = 0; j < 5; ++j) {
      const CVec w = random_ball_point(2, rng, 0.99);
      CHECK((t.apply(tinv.apply(w)) - w).norm() <= 1e-12);
    }
  }
  CHECK_THROWS_AS(moebius_center(BallPoint(v2(1.0, 0.0))), Error);
}

TEST_CASE("auto_apply and projective composition") {
  std::mt19937_64 rng(5);
  const CVec z = v2(0.3, Complex(0, 0.4));
  CHECK((auto_apply(ProjectiveAutomorphism::identity(2), z) - z).norm() == 0.0);
  for (double beta : {0.5, 1.0, 2.0}) {
    const auto h = parabolic_automorphism(beta, 0.7);
    CHECK((auto_apply(h, unit_vector(2, 0)) - unit_vector(2, 0)).norm() < 1e-14);
    CHECK(h.validation_defect() < 1e-10);
    const auto round = h.compose(h.inverse());
    for (int j = 0; j < 10; ++j) {
      const CVec w = random_ball_point(2, rng, 0.99);
      CHECK((round.apply(w) - w).norm() <= 1e-12);
    }
  }
  const auto h00 = parabolic_automorphism(0.0, 0.0);
  CHECK((h00.apply(z) - z).norm() < 1e-15);

  for (int k = 0; k < 50; ++k) {
    const auto a = random_automorphism(2, rng);
    const auto b = random_automorphism(2, rng);
    const CVec w = random_ball_point(2, rng, 0.95);
    CHECK((a.compose(b).apply(w) - a.apply(b.apply(w))).norm() <= 1e-12);
  }
  CHECK_THROWS_AS(parabolic_automorphism(1.0, 0.0, 3), Error);
  try {
    parabolic_automorphism(1.0, 0.0, 3);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedDimension);
  }
}

TEST_CASE("singular point of a projective map") {
  // The parabolic map has its pole at the hyperplane -beta z1 - s z2 + 1 + beta = 0.
  const auto h = parabolic_automorphism(0.5, 0.0);
  const CVec pole = v2(3.0, 0.0);  // -0.5*3 + 1.5 = 0
  CHECK_THROWS_AS(h.apply(pole), Error);
}

TEST_CASE("from_matrix rejects maps that leave the ball") {
  CMat m = CMat::Identity(3, 3);
  m(0, 0) = 2.0;
  CHECK_THROWS_AS(ProjectiveAutomorphism::from_matrix(m), Error);
}

TEST_CASE("auto_jacobian") {
  for (double beta : {0.5, 2.0}) {
    const double theta = 0.9;
    const double s = std::sqrt(2 * beta);
    const Complex e = std::polar(1.0, theta);
    CMat expected(2, 2);
    expected << 1.0, 0.0, s * e, e;
    CHECK((auto_jacobian(parabolic_automorphism(beta, theta), unit_vector(2, 0)) - expected).norm() < 1e-14);
  }
  CHECK((auto_jacobian(ProjectiveAutomorphism::identity(2), v2(0.1, 0.2)) - CMat::Identity(2, 2)).norm() == 0.0);

  std::mt19937_64 rng(17);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto t = random_automorphism(k % 2 ? 2 : 3, rng);
    const CVec z = random_ball_point(t.dim(), rng, 0.9);
    const CMat fd = oracle::holomorphic_jacobian([&](const CVec& x) { return t.apply(x); }, z);
    worst = std::max(worst, (t.jacobian(z) - fd).cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 1e-7);
}

TEST_CASE("kobayashi_distance") {
  CHECK(kobayashi_distance(BallPoint(CVec::Zero(2)), BallPoint(CVec::Zero(2))) == 0.0);
  CHECK(kobayashi_distance(BallPoint(CVec::Zero(2)), BallPoint(v2(0.5, 0.0))) ==
        doctest::Approx(0.5493061443340549).epsilon(1e-15));

  std::mt19937_64 rng(23);
  double worst = 0.0;
  double asym = 0.0;
  for (int k = 0; k < 300; ++k) {
    const auto t = random_automorphism(2, rng);
    const CVec z = random_ball_point(2, rng, 0.9);
    const CVec w = random_ball_point(2, rng, 0.9);
    const double d = kobayashi_distance(z, w);
    worst = std::max(worst, std::abs(kobayashi_distance(t.apply(z), t.apply(w)) - d));
    asym = std::max(asym, std::abs(kobayashi_distance(w, z) - d));
  }
  CHECK(worst <= 1e-11);
  CHECK(asym <= 1e-14);
  // Near the diagonal the closed form keeps full relative accuracy.
  const CVec z = v2(0.6, Complex(0, 0.2));
  const CVec w = z + v2(1e-9, 0.0);
  const double expected = std::atanh(std::sqrt(moebius_norm2(z, w)));
  CHECK(kobayashi_distance(z, w) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(kobayashi_distance(z, w) > 0.0);
}

TEST_CASE("geodesic devices") {
  const auto axis = geodesic_device(BallPoint(CVec::Zero(2)), BoundaryPoint(unit_vector(2, 0)));
  const Complex grid[] = {0.0, 0.3, -0.3, Complex(0, 0.7), Complex(0, -0.7), 0.9};
  for (Complex zeta : grid) {
    CHECK((axis.phi(zeta) - zeta * unit_vector(2, 0)).norm() < 1e-15);
    CHECK(std::abs(axis.rho_tilde(axis.phi(zeta)) - zeta) <= 1e-12);
  }
  CHECK(std::abs(axis.rho_tilde(v2(0.2, 0.5)) - 0.2) < 1e-15);

  // Green function restricted to a geodesic is the disc Green function.
  std::mt19937_64 rng(31);
  for (int k = 0; k < 5; ++k) {
    const auto dev = geodesic_device(BallPoint(random_ball_point(2, rng, 0.8)), BoundaryPoint(random_sphere_point(2, rng)));
    const Complex zs[] = {0.1, Complex(-0.4, 0.2), Complex(0, 0.6), 0.75, Complex(-0.3, -0.5)};
    for (Complex a : zs)
      for (Complex b : zs) {
        if (a == b) continue;
        const double lhs = green(dev.phi(a), dev.phi(b));
        const double rhs = green(CVec::Constant(1, a), CVec::Constant(1, b));
        CHECK(std::abs(lhs - rhs) <= 1e-10);
      }
  }
}

TEST_CASE("device invariants under property sampling") {
  std::mt19937_64 rng(37);
  double left_inverse = 0.0, base = 0.0, target = 0.0, idem = 0.0;
  for (int k = 0; k < 500; ++k) {
    const int n = 1 + k % 3;
    const CVec z0 = random_ball_point(n, rng, 0.9);
    const CVec p = random_sphere_point(n, rng);
    const auto dev = geodesic_device(BallPoint(z0), BoundaryPoint(p));
    for (Complex zeta : {Complex(0.0), Complex(0.3), Complex(-0.3), Complex(0, 0.7), Complex(0.9)})
      left_inverse = std::max(left_inverse, std::abs(dev.rho_tilde(dev.phi(zeta)) - zeta));
    base = std::max(base, (dev.phi(0.0) - z0).norm());
    target = std::max(target, (dev.phi(1.0) - p).norm());
    const CVec z = random_ball_point(n, rng, 0.9);
    idem = std::max(idem, (dev.rho(dev.rho(z)) - dev.rho(z)).norm());
  }
  CHECK(left_inverse <= 1e-12);
  CHECK(base <= 1e-12);
  CHECK(target <= 1e-10);
  CHECK(idem <= 1e-12);
}

TEST_CASE("device from a parabolic carrier") {
  const auto h = parabolic_automorphism(0.5, std::numbers::pi / 2);
  const auto dev = ProjectionDevice::from_carrier(h);
  CHECK((dev.target() - unit_vector(2, 0)).norm() < 1e-12);
  CHECK((dev.phi(1.0) - unit_vector(2, 0)).norm() < 1e-12);
  CHECK(std::abs(dev.rho_tilde(dev.phi(Complex(0.2, 0.3))) - Complex(0.2, 0.3)) < 1e-12);
  // The same geodesic built from its basepoint has the same parametrization.
  const auto same = geodesic_device(BallPoint(dev.basepoint()), BoundaryPoint(unit_vector(2, 0)));
  CHECK((same.phi(Complex(0.4, -0.1)) - dev.phi(Complex(0.4, -0.1))).norm() < 1e-12);
}

TEST_CASE("device_rho_tilde_differential") {
  const auto axis = geodesic_device(BallPoint(CVec::Zero(2)), BoundaryPoint(unit_vector(2, 0)));
  const CVec v = v2(Complex(0.3, -1.0), 2.0);
  CHECK(std::abs(device_rho_tilde_differential(axis, BallPoint(v2(0.4, 0.1)), v) - Complex(0.3, -1.0)) < 1e-15);

  std::mt19937_64 rng(41);
  double worst = 0.0, lin = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto dev = geodesic_device(BallPoint(random_ball_point(2, rng, 0.8)), BoundaryPoint(random_sphere_point(2, rng)));
    const CVec z = random_ball_point(2, rng, 0.8);
    const CVec a = random_sphere_point(2, rng);
    const CVec b = random_sphere_point(2, rng);
    const double h = 1e-6;
    const Complex fd = (dev.rho_tilde(z + h * a) - dev.rho_tilde(z - h * a)) / (2 * h);
    worst = std::max(worst, std::abs(dev.rho_tilde_differential(z, a) - fd));
    lin = std::max(lin, std::abs(dev.rho_tilde_differential(z, a + b) - dev.rho_tilde_differential(z, a) -
                                 dev.rho_tilde_differential(z, b)));
  }
  CHECK(worst <= 1e-8);
  CHECK(lin <= 1e-13);
}
