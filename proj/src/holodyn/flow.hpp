#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "holodyn/vector_field.hpp"

namespace holodyn {

struct FlowOptions {
  double atol = 1e-10;
  double rtol = 1e-9;
  /// Proposed steps landing at or beyond this radius are rejected and halved.
  double guard = 1.0 - 1e-9;
  double min_step = 1e-14;
  double initial_step = 1e-3;
  std::size_t max_steps = 2'000'000;
  /// On step collapse at the guard, the trajectory counts as saturated when
  /// the outward speed is at most this multiple of 1 - |z|^2.
  double saturation_gain = 1e3;
  bool record = true;
};

/// Tolerances 1e-13 for checks that compare against closed forms near the sphere.
inline FlowOptions precise_flow_options() {
  FlowOptions o;
  o.atol = 1e-13;
  o.rtol = 1e-13;
  return o;
}

struct Trajectory {
  std::vector<double> times;
  std::vector<CVec> points;
  std::vector<double> local_errors;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  double max_local_error = 0.0;
  /// Set when the flow reached the guard radius with vanishing outward speed;
  /// the state is then held until t_end.
  bool saturated = false;
  double saturation_time = 0.0;

  const CVec& final_point() const { return points.back(); }
  double final_time() const { return times.back(); }
};

/// Adaptive Dormand-Prince RK5(4) solution of dz/dt = F(z). Throws BlowUp
/// (message carries the escape-time estimate) when the step size collapses
/// with the state still moving outward.
Trajectory integrate(const FieldFn& f, const CVec& z0, double t_end, const FlowOptions& opt = {});
CVec flow_point(const FieldFn& f, const CVec& z0, double t, const FlowOptions& opt = {});

/// States at each time of an increasing grid starting at or after 0.
struct GridFlow {
  std::vector<double> times;
  std::vector<CVec> points;
  double saturation_time = -1.0;  // negative when never saturated
};
GridFlow flow_on_grid(const FieldFn& f, const CVec& z0, const std::vector<double>& times, const FlowOptions& opt = {});

struct FlowCheck {
  bool pass = false;
  double worst = 0.0;  // largest violation (or discrepancy)
  std::vector<double> values;
  std::string note;
};

FlowCheck semigroup_check(const FieldFn& f, const CVec& z0, double t, double s, double tol = 1e-8,
                          const FlowOptions& opt = {});
FlowCheck kobayashi_monotone_check(const FieldFn& f, const CVec& z0, const CVec& w0, const std::vector<double>& times,
                                   double slack = 1e-10, const FlowOptions& opt = {});
FlowCheck schwarz_check(const FieldFn& f, const CVec& fixed, const CVec& z, const std::vector<double>& times,
                        double slack = 1e-10, const FlowOptions& opt = {});
/// u_p(Phi_t z) - e^{-t beta} u_p(z) <= 0, relative to 1 + |e^{-t beta} u_p(z)|.
/// Times after saturation, or with the state within 1e-5 of the sphere, are skipped.
FlowCheck energy_check(const FieldFn& f, const CVec& p, double beta, const CVec& z, const std::vector<double>& times,
                       double tol = 1e-8, const FlowOptions& opt = {});
/// t -> u_p(Phi_t z) - e^{-t beta} u_p(z) is non-increasing (for beta <= 0).
FlowCheck energy_monotone_check(const FieldFn& f, const CVec& p, double beta, const CVec& z,
                                const std::vector<double>& times, double slack = 1e-8, const FlowOptions& opt = {});

enum class AttractorKind { Interior, Boundary, Inconclusive };
const char* attractor_kind_name(AttractorKind k);

struct AttractorEstimate {
  AttractorKind kind = AttractorKind::Inconclusive;
  CVec limit;
  double field_norm = 0.0;  // |F| at the final state
  double time = 0.0;
};

AttractorEstimate longtime_attractor(const FieldFn& f, const CVec& z0, double horizon = 60.0,
                                     const FlowOptions& opt = {});

/// Columns t, re_z1, im_z1, ..., local_error.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);

}  // namespace holodyn
