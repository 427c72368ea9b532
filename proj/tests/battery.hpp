#pragma once

// A fixed set of ten generators and ten non-generators shared by the unit
// and acceptance tests.

#include <string>
#include <vector>

#include "holodyn/ball_geometry.hpp"
#include "holodyn/vector_field.hpp"

namespace battery {

using namespace holodyn;

inline CVec v2(Complex a, Complex b) {
  CVec z(2);
  z << a, b;
  return z;
}

inline FieldFn text_field(const std::string& text) { return parse_field(text, 2).as_function(); }

struct Case {
  std::string name;
  FieldFn f;
  bool generator;
};

inline std::vector<Case> generators() {
  std::vector<Case> out;
  auto add = [&](std::string name, FieldFn f, bool gen) { out.push_back({std::move(name), std::move(f), gen}); };
  const auto unos = parse_field("(0, -z2/(1-z1))", 2);
  add("contraction", text_field("(-z1, -z2)"), true);
  add("rotation", text_field("(1i*z1, 1i*z2)"), true);
  add("unos", unos.as_function(), true);
  add("unos conjugated", conjugate_field(unos, parabolic_automorphism(0.5, 0.0)).as_function(), true);
  add("dues F", text_field("(-2i/3*z2, -5i/3*z2 - 2i/3*z1)"), true);
  add("dues P", text_field("(-2i/3*z1*z2, -1i/3*(z2-2)*(2*z2-1))"), true);
  add("dues H", text_field("(2i/3*z2*(z1-1), 2i/3*(1+z2^2-z1))"), true);
  add("quadratic", quadratic_field(v2(0.3, 0.0), CMat::Identity(2, 2), v2(0.2, 0.1)).as_function(), true);
  add("hyperbolic group", text_field("(1 - z1^2, -z1*z2)"), true);
  add("spiral", text_field("((-1+1i)*z1, -2*z2)"), true);

  add("expansion", text_field("(z1, z2)"), false);
  add("saddle", text_field("(z1, -z2)"), false);
  add("translation", text_field("(0.5, 0)"), false);
  add("swap", text_field("(z2, z1)"), false);
  add("mixed", text_field("(-z1, 3*z2)"), false);
  add("weak saddle", text_field("(0.1*z1, -z2)"), false);
  add("square", text_field("(z1^2, 0)"), false);
  CMat a(2, 2);
  a << 0.1, 0.0, 0.0, 1.0;
  add("quadratic violated", quadratic_field(CVec::Zero(2), a, v2(0.5, 0.0)).as_function(), false);
  add("shifted contraction", text_field("(-z1 + 1.5, -z2)"), false);
  add("imaginary translation", text_field("(1i, 0)"), false);
  return out;
}

}  // namespace battery
