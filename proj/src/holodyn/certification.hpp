#pragma once

#include <vector>

#include "holodyn/kernels.hpp"
#include "holodyn/report.hpp"
#include "holodyn/sampling.hpp"
#include "holodyn/vector_field.hpp"

namespace holodyn {

constexpr double kDefaultTolerance = 1e-9;

/// -dG_(z,w).(F(z), F(w)); non-negative for generators.
Pairing green_generator_margin(const FieldFn& f, const CVec& z, const CVec& w);
/// Pairwise inequality between the two one-point terms and the cross term.
Pairing ball_generator_margin(const FieldFn& f, const CVec& z, const CVec& w);
/// -[du_p.F + beta u_p] at z.
Pairing brfp_rate_margin(const FieldFn& f, const CVec& p, double beta, const CVec& z);
/// du_p(z).F(z) / u_p(z).
double rate_ratio(const FieldFn& f, const CVec& p, const CVec& z);

CertReport certify_generator_green(const FieldFn& f, const SampleSpec& spec, double tol = kDefaultTolerance);
CertReport certify_generator_ball(const FieldFn& f, const SampleSpec& spec, double tol = kDefaultTolerance);

std::vector<double> default_shift_grid();
CertReport certify_generator_shift(const FieldFn& f, const SampleSpec& spec,
                                   const std::vector<double>& r_grid = default_shift_grid(),
                                   double tol = kDefaultTolerance);

/// Margins are -|dG.(F(z),F(w))|, so F and -F are both checked at once.
CertReport certify_group(const FieldFn& f, const SampleSpec& spec, double tol = kDefaultTolerance);

/// Re<Au,u> - |<b,u>| on the unit sphere; the field constant `a` does not
/// enter the condition.
CertReport certify_quadratic(const CVec& a, const CMat& A, const CVec& b, std::uint64_t sphere_count = 2000,
                             std::uint64_t seed = 1, double tol = kDefaultTolerance);

CertReport certify_brfp_rate(const FieldFn& f, const CVec& p, double beta, const SampleSpec& spec,
                             double tol = kDefaultTolerance);
CertReport certify_stationary(const FieldFn& f, const CVec& p, const SampleSpec& spec, double tol = kDefaultTolerance);

struct RateEstimate {
  double b = 0.0;            // -infinity when the ratio is unbounded below
  bool unbounded = false;
  std::vector<double> caps;  // radii of the nested balls searched
  std::vector<double> minima;
  CVec argmin;
};

RateEstimate estimate_rate(const FieldFn& f, const CVec& p, const SampleSpec& spec);
double estimate_rate_b(const FieldFn& f, const CVec& p, const SampleSpec& spec);

/// Disc field G = (z - b)(conj(b) z - 1) p with Re p >= 0.
CertReport verify_berkson_porta(const FieldFn& g, Complex b, const SampleSpec& spec, double tol = kDefaultTolerance);

}  // namespace holodyn
