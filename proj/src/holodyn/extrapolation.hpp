#pragma once

#include <span>

#include "holodyn/types.hpp"

namespace holodyn {

struct Extrapolation {
  Complex value;
  double residual = 0.0;  // difference of the last two diagonal entries
};

/// Richardson table for samples taken at h, h/ratio, h/ratio^2, ... of a
/// quantity with an expansion in integer powers of h. Uses the last
/// `levels` samples.
Extrapolation richardson(std::span<const Complex> values, double ratio = 2.0, int levels = 5);

}  // namespace holodyn
