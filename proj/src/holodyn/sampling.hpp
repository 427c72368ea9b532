#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "holodyn/types.hpp"

namespace holodyn {

struct SampleSpec {
  std::uint64_t count = 1000;
  std::uint64_t seed = 1;
  double radius_cap = 0.999;
  double pair_separation = 1e-3;
};

/// Uniform double in [0,1) from the top 53 bits; identical on every platform.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Halton sequence with a seeded Cranley-Patterson rotation.
class ShiftedHalton {
 public:
  ShiftedHalton(int dims, std::uint64_t seed);
  int dims() const { return static_cast<int>(shift_.size()); }
  /// Writes point `index` (0-based) into out.
  void point(std::uint64_t index, std::span<double> out) const;

 private:
  std::vector<int> bases_;
  std::vector<double> shift_;
};

/// Maps 2n uniforms to the unit sphere of C^n (Gaussian direction).
CVec sphere_from_uniforms(int dim, std::span<const double> u);
/// Maps 2n+1 uniforms to the ball of radius `cap`; radius via the (2n)-th root.
CVec ball_from_uniforms(int dim, std::span<const double> u, double cap);

/// Deterministic low-discrepancy points in the ball of radius cap.
std::vector<CVec> ball_samples(int dim, std::uint64_t count, std::uint64_t seed, double cap);
std::vector<CVec> sphere_samples(int dim, std::uint64_t count, std::uint64_t seed);

struct PointPair {
  CVec z;
  CVec w;
};

/// Pairs (z, w) with |z - w| >= spec.pair_separation.
std::vector<PointPair> pair_samples(int dim, const SampleSpec& spec);

/// Points from a plain seeded PRNG (for property tests and device sampling).
CVec random_ball_point(int dim, std::mt19937_64& rng, double cap);
CVec random_sphere_point(int dim, std::mt19937_64& rng);

}  // namespace holodyn
