#pragma once

#include <vector>

#include "holodyn/certification.hpp"
#include "holodyn/vector_field.hpp"

namespace holodyn {

struct ResolventOptions {
  /// Multiplies the first continuation step min(0.1, t/4).
  double initial_step_scale = 1.0;
  double tolerance = 1e-12;
  int max_newton = 40;
  double min_step = 1e-12;
};

struct ResolventPoint {
  CVec w;
  double t = 0.0;
  double residual = 0.0;  // |w - z - t F(w)|
  int newton_iterations = 0;
  int continuation_steps = 0;
};

/// Solves w - z = t F(w) by continuation in t from w = z, with a tangent
/// predictor and a damped Newton corrector on I - t dF.
ResolventPoint resolvent_point(const VectorField& f, const CVec& z, double t, const ResolventOptions& opt = {});

/// (1/2t)(-1 + exp(Log(1 + 4t(t + z))/2)), the resolvent of 1 - zeta^2 with the principal Log.
Complex disc_hyperbolic_resolvent(Complex z, double t);

struct ClosedFormReport {
  double max_discrepancy = 0.0;
  double worst_t = 0.0;
  Complex worst_z;
  std::size_t failures = 0;  // grid points where continuation failed
};
ClosedFormReport resolvent_vs_closed_form(const std::vector<double>& t_grid, const std::vector<Complex>& z_grid);

struct GeneratorLimit {
  std::vector<double> t_seq;
  CVec estimate;
  CVec field_value;
  double error = 0.0;     // |estimate - F(z)|
  double residual = 0.0;  // extrapolation residual
};
std::vector<double> default_limit_times();
GeneratorLimit resolvent_generator_limit(const VectorField& f, const CVec& z,
                                         const std::vector<double>& t_seq = default_limit_times());

struct FixedPointReport {
  bool pass = true;
  double worst = 0.0;
  std::vector<double> discrepancies;  // per candidate, max over the t-grid
};
FixedPointReport resolvent_fixed_points_check(const VectorField& f, const std::vector<CVec>& candidates,
                                              const std::vector<double>& t_grid = {0.1, 1.0, 10.0},
                                              double tol = 1e-10);

/// Samples z in E(tau, R) and checks G_t(z) stays there. Requires the flow
/// from 0 to approach tau (Denjoy-Wolff point); throws Precondition otherwise.
CertReport resolvent_horosphere_check(const VectorField& f, const CVec& tau, const std::vector<double>& r_grid,
                                      const SampleSpec& spec, const std::vector<double>& t_grid = {0.1, 1.0, 10.0},
                                      double tol = kDefaultTolerance);

}  // namespace holodyn
