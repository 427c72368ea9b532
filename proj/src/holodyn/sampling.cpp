#include "holodyn/sampling.hpp"

#include <cmath>

#include <boost/math/special_functions/erf.hpp>

namespace holodyn {

namespace {

const int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                       53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113};

double radical_inverse(std::uint64_t index, int base) {
  double inv = 1.0 / base;
  double f = inv;
  double result = 0.0;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return result;
}

double inverse_normal(double u) {
  // Keep away from 0 and 1 so the Gaussian stays finite.
  u = std::min(std::max(u, 1e-15), 1.0 - 1e-15);
  return std::sqrt(2.0) * boost::math::erf_inv(2.0 * u - 1.0);
}

}  // namespace

ShiftedHalton::ShiftedHalton(int dims, std::uint64_t seed) {
  if (dims <= 0 || dims > static_cast<int>(std::size(kPrimes)))
    throw Error(ErrorCode::InvalidArgument, "unsupported Halton dimension");
  std::mt19937_64 rng(seed);
  for (int d = 0; d < dims; ++d) {
    bases_.push_back(kPrimes[d]);
    shift_.push_back(uniform01(rng));
  }
}

void ShiftedHalton::point(std::uint64_t index, std::span<double> out) const {
  for (std::size_t d = 0; d < shift_.size(); ++d) {
    double x = radical_inverse(index + 1, bases_[d]) + shift_[d];
    out[d] = x - std::floor(x);
  }
}

CVec sphere_from_uniforms(int dim, std::span<const double> u) {
  CVec v(dim);
  for (int j = 0; j < dim; ++j) v(j) = Complex(inverse_normal(u[2 * j]), inverse_normal(u[2 * j + 1]));
  double n = v.norm();
  if (n == 0.0) return unit_vector(dim, 0);
  return v / n;
}

CVec ball_from_uniforms(int dim, std::span<const double> u, double cap) {
  CVec dir = sphere_from_uniforms(dim, u.subspan(0, 2 * dim));
  double r = cap * std::pow(u[2 * dim], 1.0 / (2.0 * dim));
  return r * dir;
}

std::vector<CVec> ball_samples(int dim, std::uint64_t count, std::uint64_t seed, double cap) {
  ShiftedHalton seq(2 * dim + 1, seed);
  std::vector<double> u(2 * dim + 1);
  std::vector<CVec> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    seq.point(i, u);
    out.push_back(ball_from_uniforms(dim, u, cap));
  }
  return out;
}

std::vector<CVec> sphere_samples(int dim, std::uint64_t count, std::uint64_t seed) {
  ShiftedHalton seq(2 * dim, seed);
  std::vector<double> u(2 * dim);
  std::vector<CVec> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    seq.point(i, u);
    out.push_back(sphere_from_uniforms(dim, u));
  }
  return out;
}

std::vector<PointPair> pair_samples(int dim, const SampleSpec& spec) {
  const int half = 2 * dim + 1;
  ShiftedHalton seq(2 * half, spec.seed);
  std::vector<double> u(2 * half);
  std::vector<PointPair> out;
  out.reserve(spec.count);
  std::span<const double> us(u);
  for (std::uint64_t i = 0; out.size() < spec.count && i < 16 * spec.count + 64; ++i) {
    seq.point(i, u);
    CVec z = ball_from_uniforms(dim, us.subspan(0, half), spec.radius_cap);
    CVec w = ball_from_uniforms(dim, us.subspan(half, half), spec.radius_cap);
    if ((z - w).norm() < spec.pair_separation) continue;
    out.push_back({std::move(z), std::move(w)});
  }
  return out;
}

CVec random_sphere_point(int dim, std::mt19937_64& rng) {
  std::vector<double> u(2 * dim);
  for (auto& x : u) x = uniform01(rng);
  return sphere_from_uniforms(dim, u);
}

CVec random_ball_point(int dim, std::mt19937_64& rng, double cap) {
  std::vector<double> u(2 * dim + 1);
  for (auto& x : u) x = uniform01(rng);
  return ball_from_uniforms(dim, u, cap);
}

}  // namespace holodyn
