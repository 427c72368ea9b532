#include "holodyn/vector_field.hpp"

#include <random>

#include "holodyn/sampling.hpp"

namespace holodyn {

VectorField::VectorField(std::vector<HoloExpr> components) : components_(std::move(components)) {
  const int n = dim();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "vector field needs at least one component");
  for (const auto& c : components_)
    if (c.max_variable() >= n) throw Error(ErrorCode::UnknownIdentifier, "component references a variable beyond the field dimension");
  auto jac = std::make_shared<std::vector<HoloExpr>>();
  jac->reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) jac->push_back(components_[i].derivative(j));
  jacobian_ = std::move(jac);

  std::mt19937_64 rng(0xf1e1d);
  for (int k = 0; k < 256 && poles_avoid_samples_; ++k) {
    const CVec z = random_ball_point(n, rng, 1.0 - 1e-9);
    for (const auto& c : components_) {
      if (!(c.min_denominator(z) >= 1e-9)) {
        poles_avoid_samples_ = false;
        break;
      }
    }
  }
}

CVec VectorField::eval(const CVec& z) const {
  if (z.size() != dim()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch in field evaluation");
  CVec out(dim());
  for (int i = 0; i < dim(); ++i) out(i) = components_[i].eval(z);
  return out;
}

CMat VectorField::jacobian(const CVec& z) const {
  if (z.size() != dim()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch in field jacobian");
  const int n = dim();
  CMat j(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) j(r, c) = (*jacobian_)[static_cast<std::size_t>(r) * n + c].eval(z);
  return j;
}

std::string VectorField::to_string() const {
  std::string s = "(";
  for (int i = 0; i < dim(); ++i) {
    if (i) s += ", ";
    s += components_[i].to_string();
  }
  return s + ")";
}

FieldFn VectorField::as_function() const {
  return {dim(), [field = *this](const CVec& z) { return field.eval(z); }};
}

VectorField VectorField::operator+(const VectorField& other) const {
  if (other.dim() != dim()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch in field sum");
  std::vector<HoloExpr> comps;
  for (int i = 0; i < dim(); ++i) comps.push_back(components_[i] + other.components_[i]);
  return VectorField(std::move(comps));
}

VectorField VectorField::scaled(Complex c) const {
  std::vector<HoloExpr> comps;
  for (const auto& e : components_) comps.push_back(HoloExpr::constant(c) * e);
  return VectorField(std::move(comps));
}

VectorField parse_field(std::string_view text, int dim) { return VectorField(parse_components(text, dim)); }

CVec eval(const VectorField& field, const BallPoint& z) { return field.eval(z.coords()); }

CMat jacobian(const VectorField& field, const BallPoint& z) { return field.jacobian(z.coords()); }

VectorField quadratic_field(const CVec& a, const CMat& A, const CVec& b) {
  const int n = static_cast<int>(a.size());
  if (A.rows() != n || A.cols() != n || b.size() != n)
    throw Error(ErrorCode::InvalidArgument, "inconsistent dimensions for quadratic field");
  auto vec = [](const CVec& v) { return std::vector<Complex>(v.data(), v.data() + v.size()); };
  const HoloExpr za = HoloExpr::inner_with(vec(a));
  const HoloExpr zb = HoloExpr::inner_with(vec(b));
  std::vector<HoloExpr> comps;
  for (int i = 0; i < n; ++i) {
    const HoloExpr zi = HoloExpr::variable(i);
    HoloExpr linear = HoloExpr::constant(0.0);
    for (int j = 0; j < n; ++j) linear = linear + HoloExpr::constant(A(i, j)) * HoloExpr::variable(j);
    comps.push_back(HoloExpr::constant(a(i)) - za * zi - (linear + zb * zi));
  }
  return VectorField(std::move(comps));
}

VectorField berkson_porta_field(Complex b, const HoloExpr& p) {
  if (std::abs(b) > 1.0 + 1e-12) throw Error(ErrorCode::Domain, "Berkson-Porta point must lie in the closed disc");
  if (p.max_variable() > 0) throw Error(ErrorCode::InvalidArgument, "Berkson-Porta factor must be a disc function");
  const HoloExpr z = HoloExpr::variable(0);
  const HoloExpr bb = HoloExpr::constant(b);
  const HoloExpr bc = HoloExpr::constant(std::conj(b));
  return VectorField({(z - bb) * (bc * z - HoloExpr::constant(1.0)) * p});
}

VectorField conjugate_field(const VectorField& field, const ProjectiveAutomorphism& eta) {
  const int n = field.dim();
  if (eta.dim() != n) throw Error(ErrorCode::InvalidArgument, "dimension mismatch in conjugate_field");
  const CMat& m = eta.matrix();
  const CMat inv = m.inverse();
  auto affine = [n](const auto& row) {
    HoloExpr e = HoloExpr::constant(row(n));
    for (int j = 0; j < n; ++j) e = e + HoloExpr::constant(row(j)) * HoloExpr::variable(j);
    return e;
  };
  // eta(z) = m_top [z;1] / mu(z); with N = m^{-1} = [[A, b], [c, d]],
  // d(eta^{-1})_{eta(z)} = mu(z) (A - z c).
  const HoloExpr mu = affine(m.row(n));
  std::vector<HoloExpr> image;
  for (int i = 0; i < n; ++i) image.push_back(affine(m.row(i)) / mu);
  std::vector<HoloExpr> pulled;
  for (const auto& comp : field.components()) pulled.push_back(comp.substitute(image));
  std::vector<HoloExpr> comps;
  for (int i = 0; i < n; ++i) {
    HoloExpr s = HoloExpr::constant(0.0);
    for (int j = 0; j < n; ++j) {
      const HoloExpr coeff = HoloExpr::constant(inv(i, j)) - HoloExpr::variable(i) * HoloExpr::constant(inv(n, j));
      s = s + coeff * pulled[j];
    }
    comps.push_back(mu * s);
  }
  return VectorField(std::move(comps));
}

}  // namespace holodyn
