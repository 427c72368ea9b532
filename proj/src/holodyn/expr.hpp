#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "holodyn/types.hpp"

namespace holodyn {

/// Holomorphic scalar expression over z_1..z_n. Nodes are immutable and shared;
/// the smart constructors fold constants and drop trivial terms.
class HoloExpr {
 public:
  enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Inner };

  static HoloExpr constant(Complex c);
  /// Coordinate z_{index+1} (0-based index).
  static HoloExpr variable(int index);
  /// <z, c> = sum_j z_j conj(c_j).
  static HoloExpr inner_with(std::vector<Complex> c);
  static HoloExpr pow(const HoloExpr& base, int exponent);

  friend HoloExpr operator+(const HoloExpr& a, const HoloExpr& b);
  friend HoloExpr operator-(const HoloExpr& a, const HoloExpr& b);
  friend HoloExpr operator*(const HoloExpr& a, const HoloExpr& b);
  friend HoloExpr operator/(const HoloExpr& a, const HoloExpr& b);
  friend HoloExpr operator-(const HoloExpr& a);

  Op op() const;
  bool is_constant() const { return op() == Op::Const; }
  bool is_zero() const;
  Complex constant_value() const;
  /// Largest variable index referenced, or -1.
  int max_variable() const;

  /// Throws Evaluation when a denominator is within 1e-9 of zero.
  Complex eval(const CVec& z) const;
  HoloExpr derivative(int index) const;
  /// Replaces z_j by replacements[j].
  HoloExpr substitute(std::span<const HoloExpr> replacements) const;
  /// Smallest |denominator| over all division and negative-power nodes at z
  /// (infinity when there are none).
  double min_denominator(const CVec& z) const;

  std::string to_string() const;
  std::size_t node_count() const;

  struct Node;

 private:
  explicit HoloExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses one scalar expression in variables z1..z_dim.
HoloExpr parse_expression(std::string_view text, int dim);

/// Parses a parenthesized component list "(e1, ..., en)"; for dim 1 a bare
/// expression is accepted too.
std::vector<HoloExpr> parse_components(std::string_view text, int dim);

/// Parses a constant complex expression such as "0.3 - 0.4i" or "2i/3".
Complex parse_complex(std::string_view text);

/// Parses a point: "e1".."en", "0", or a comma-separated list of complex constants.
CVec parse_point(std::string_view text, int dim);

}  // namespace holodyn
