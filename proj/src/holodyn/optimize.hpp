#pragma once

#include <functional>
#include <vector>

namespace holodyn {

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

/// Derivative-free local minimization (Nelder-Mead simplex). Non-finite
/// objective values are treated as +infinity.
MinimizeResult minimize_simplex(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                                double step, int max_iterations = 500, double size_tolerance = 1e-13);

}  // namespace holodyn
