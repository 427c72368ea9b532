#include "holodyn/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace holodyn {

struct HoloExpr::Node {
  Op op = Op::Const;
  Complex value{};
  int index = 0;  // variable index or integer exponent
  std::vector<Complex> coeffs;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

namespace {

using NodePtr = std::shared_ptr<const HoloExpr::Node>;

constexpr double kPoleGuard = 1e-9;

NodePtr make(HoloExpr::Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<HoloExpr::Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr make_const(Complex c) {
  auto n = std::make_shared<HoloExpr::Node>();
  n->op = HoloExpr::Op::Const;
  n->value = c;
  return n;
}

bool is_const(const NodePtr& n) { return n->op == HoloExpr::Op::Const; }
bool is_const_value(const NodePtr& n, Complex v) { return is_const(n) && n->value == v; }

Complex ipow(Complex base, int k) {
  if (k < 0) return 1.0 / ipow(base, -k);
  Complex result = 1.0;
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

}  // namespace

// ---------------------------------------------------------------------------
// smart constructors

HoloExpr HoloExpr::constant(Complex c) { return HoloExpr(make_const(c)); }

HoloExpr HoloExpr::variable(int index) {
  if (index < 0) throw Error(ErrorCode::InvalidArgument, "negative variable index");
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->index = index;
  return HoloExpr(std::move(n));
}

HoloExpr HoloExpr::inner_with(std::vector<Complex> c) {
  bool all_zero = true;
  for (auto x : c) all_zero = all_zero && x == Complex(0.0);
  if (all_zero) return constant(0.0);
  auto n = std::make_shared<Node>();
  n->op = Op::Inner;
  n->coeffs = std::move(c);
  return HoloExpr(std::move(n));
}

HoloExpr HoloExpr::pow(const HoloExpr& base, int exponent) {
  if (exponent == 0) return constant(1.0);
  if (exponent == 1) return base;
  if (base.is_constant()) {
    if (exponent < 0 && base.constant_value() == Complex(0.0))
      throw Error(ErrorCode::Evaluation, "negative power of zero");
    return constant(ipow(base.constant_value(), exponent));
  }
  auto n = std::make_shared<Node>();
  n->op = Op::Pow;
  n->index = exponent;
  n->a = base.node_;
  return HoloExpr(std::move(n));
}

HoloExpr operator+(const HoloExpr& a, const HoloExpr& b) {
  if (a.is_constant() && b.is_constant()) return HoloExpr::constant(a.constant_value() + b.constant_value());
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return HoloExpr(make(HoloExpr::Op::Add, a.node_, b.node_));
}

HoloExpr operator-(const HoloExpr& a, const HoloExpr& b) {
  if (a.is_constant() && b.is_constant()) return HoloExpr::constant(a.constant_value() - b.constant_value());
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  return HoloExpr(make(HoloExpr::Op::Sub, a.node_, b.node_));
}

HoloExpr operator*(const HoloExpr& a, const HoloExpr& b) {
  if (a.is_constant() && b.is_constant()) return HoloExpr::constant(a.constant_value() * b.constant_value());
  if (a.is_zero() || b.is_zero()) return HoloExpr::constant(0.0);
  if (is_const_value(a.node_, 1.0)) return b;
  if (is_const_value(b.node_, 1.0)) return a;
  if (is_const_value(a.node_, -1.0)) return -b;
  if (is_const_value(b.node_, -1.0)) return -a;
  return HoloExpr(make(HoloExpr::Op::Mul, a.node_, b.node_));
}

HoloExpr operator/(const HoloExpr& a, const HoloExpr& b) {
  if (b.is_zero()) throw Error(ErrorCode::Evaluation, "division by the zero constant");
  if (a.is_constant() && b.is_constant()) return HoloExpr::constant(a.constant_value() / b.constant_value());
  if (a.is_zero()) return HoloExpr::constant(0.0);
  if (is_const_value(b.node_, 1.0)) return a;
  return HoloExpr(make(HoloExpr::Op::Div, a.node_, b.node_));
}

HoloExpr operator-(const HoloExpr& a) {
  if (a.is_constant()) return HoloExpr::constant(-a.constant_value());
  if (a.op() == HoloExpr::Op::Neg) return HoloExpr(a.node_->a);
  return HoloExpr(make(HoloExpr::Op::Neg, a.node_));
}

HoloExpr::Op HoloExpr::op() const { return node_->op; }

bool HoloExpr::is_zero() const { return is_const_value(node_, 0.0); }

Complex HoloExpr::constant_value() const {
  if (!is_constant()) throw Error(ErrorCode::InvalidArgument, "expression is not constant");
  return node_->value;
}

// ---------------------------------------------------------------------------
// traversal

namespace {

int max_var(const HoloExpr::Node& n) {
  using Op = HoloExpr::Op;
  switch (n.op) {
    case Op::Const: return -1;
    case Op::Var: return n.index;
    case Op::Inner: return static_cast<int>(n.coeffs.size()) - 1;
    case Op::Neg:
    case Op::Pow: return max_var(*n.a);
    default: return std::max(max_var(*n.a), max_var(*n.b));
  }
}

Complex eval_node(const HoloExpr::Node& n, const CVec& z) {
  using Op = HoloExpr::Op;
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var:
      if (n.index >= z.size()) throw Error(ErrorCode::Evaluation, "variable index exceeds point dimension");
      return z(n.index);
    case Op::Inner: {
      Complex s = 0.0;
      const auto m = std::min<Eigen::Index>(z.size(), static_cast<Eigen::Index>(n.coeffs.size()));
      for (Eigen::Index j = 0; j < m; ++j) s += z(j) * std::conj(n.coeffs[j]);
      return s;
    }
    case Op::Add: return eval_node(*n.a, z) + eval_node(*n.b, z);
    case Op::Sub: return eval_node(*n.a, z) - eval_node(*n.b, z);
    case Op::Mul: return eval_node(*n.a, z) * eval_node(*n.b, z);
    case Op::Div: {
      const Complex den = eval_node(*n.b, z);
      if (!(std::abs(den) >= kPoleGuard)) throw Error(ErrorCode::Evaluation, "pole of the field at the evaluation point");
      return eval_node(*n.a, z) / den;
    }
    case Op::Neg: return -eval_node(*n.a, z);
    case Op::Pow: {
      const Complex base = eval_node(*n.a, z);
      if (n.index < 0 && !(std::abs(base) >= kPoleGuard))
        throw Error(ErrorCode::Evaluation, "pole of the field at the evaluation point");
      return ipow(base, n.index);
    }
  }
  return 0.0;
}

double min_den(const HoloExpr::Node& n, const CVec& z) {
  using Op = HoloExpr::Op;
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (n.op) {
    case Op::Const:
    case Op::Var:
    case Op::Inner: return inf;
    case Op::Neg: return min_den(*n.a, z);
    case Op::Pow: {
      double m = min_den(*n.a, z);
      if (n.index < 0) m = std::min(m, std::abs(eval_node(*n.a, z)));
      return m;
    }
    case Op::Div: {
      double m = std::min(min_den(*n.a, z), min_den(*n.b, z));
      return std::min(m, std::abs(eval_node(*n.b, z)));
    }
    default: return std::min(min_den(*n.a, z), min_den(*n.b, z));
  }
}

std::size_t count_nodes(const HoloExpr::Node& n) {
  std::size_t c = 1;
  if (n.a) c += count_nodes(*n.a);
  if (n.b) c += count_nodes(*n.b);
  return c;
}

}  // namespace

int HoloExpr::max_variable() const { return max_var(*node_); }

Complex HoloExpr::eval(const CVec& z) const { return eval_node(*node_, z); }

double HoloExpr::min_denominator(const CVec& z) const { return min_den(*node_, z); }

std::size_t HoloExpr::node_count() const { return count_nodes(*node_); }

HoloExpr HoloExpr::derivative(int index) const {
  const Node& n = *node_;
  const HoloExpr a(n.a ? n.a : node_);
  const HoloExpr b(n.b ? n.b : node_);
  switch (n.op) {
    case Op::Const: return constant(0.0);
    case Op::Var: return constant(n.index == index ? 1.0 : 0.0);
    case Op::Inner:
      return constant(index < static_cast<int>(n.coeffs.size()) ? std::conj(n.coeffs[index]) : Complex(0.0));
    case Op::Add: return a.derivative(index) + b.derivative(index);
    case Op::Sub: return a.derivative(index) - b.derivative(index);
    case Op::Mul: return a.derivative(index) * b + a * b.derivative(index);
    case Op::Div: {
      HoloExpr db = b.derivative(index);
      HoloExpr da = a.derivative(index);
      if (db.is_zero()) return da / b;
      return da / b - a * db / pow(b, 2);
    }
    case Op::Neg: return -a.derivative(index);
    case Op::Pow: return constant(static_cast<double>(n.index)) * pow(a, n.index - 1) * a.derivative(index);
  }
  return constant(0.0);
}

HoloExpr HoloExpr::substitute(std::span<const HoloExpr> repl) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Const: return *this;
    case Op::Var:
      if (n.index >= static_cast<int>(repl.size())) throw Error(ErrorCode::InvalidArgument, "substitution too short");
      return repl[n.index];
    case Op::Inner: {
      HoloExpr s = constant(0.0);
      for (std::size_t j = 0; j < n.coeffs.size(); ++j) {
        if (n.coeffs[j] == Complex(0.0)) continue;
        if (j >= repl.size()) throw Error(ErrorCode::InvalidArgument, "substitution too short");
        s = s + repl[j] * constant(std::conj(n.coeffs[j]));
      }
      return s;
    }
    case Op::Add: return HoloExpr(n.a).substitute(repl) + HoloExpr(n.b).substitute(repl);
    case Op::Sub: return HoloExpr(n.a).substitute(repl) - HoloExpr(n.b).substitute(repl);
    case Op::Mul: return HoloExpr(n.a).substitute(repl) * HoloExpr(n.b).substitute(repl);
    case Op::Div: return HoloExpr(n.a).substitute(repl) / HoloExpr(n.b).substitute(repl);
    case Op::Neg: return -HoloExpr(n.a).substitute(repl);
    case Op::Pow: return pow(HoloExpr(n.a).substitute(repl), n.index);
  }
  return *this;
}

// ---------------------------------------------------------------------------
// printing

namespace {

std::string format_double(double x) {
  char buf[64];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    double back = 0.0;
    std::from_chars(buf, buf + std::char_traits<char>::length(buf), back);
    if (back == x) break;
  }
  return buf;
}

constexpr int kPrecAdd = 1, kPrecMul = 2, kPrecNeg = 3, kPrecPow = 4, kPrecAtom = 5;

std::pair<std::string, int> format_constant(Complex c) {
  if (c.imag() == 0.0) {
    std::string s = format_double(c.real());
    return {s, c.real() < 0 || std::signbit(c.real()) ? kPrecNeg : kPrecAtom};
  }
  if (c.real() == 0.0) {
    std::string s = format_double(c.imag()) + "i";
    return {s, c.imag() < 0 ? kPrecNeg : kPrecAtom};
  }
  std::string s = "(" + format_double(c.real()) + (c.imag() < 0 ? "-" : "+") + format_double(std::abs(c.imag())) + "i)";
  return {s, kPrecAtom};
}

std::pair<std::string, int> print_node(const HoloExpr::Node& n);

std::string wrap(const HoloExpr::Node& n, int min_prec) {
  auto [s, p] = print_node(n);
  return p < min_prec ? "(" + s + ")" : s;
}

std::pair<std::string, int> print_node(const HoloExpr::Node& n) {
  using Op = HoloExpr::Op;
  switch (n.op) {
    case Op::Const: return format_constant(n.value);
    case Op::Var: return {"z" + std::to_string(n.index + 1), kPrecAtom};
    case Op::Inner: {
      std::string s = "inner(z, [";
      for (std::size_t j = 0; j < n.coeffs.size(); ++j) {
        if (j) s += ", ";
        s += format_constant(n.coeffs[j]).first;
      }
      return {s + "])", kPrecAtom};
    }
    case Op::Add: return {wrap(*n.a, kPrecAdd) + " + " + wrap(*n.b, kPrecAdd + 1), kPrecAdd};
    case Op::Sub: return {wrap(*n.a, kPrecAdd) + " - " + wrap(*n.b, kPrecAdd + 1), kPrecAdd};
    case Op::Mul: return {wrap(*n.a, kPrecMul) + "*" + wrap(*n.b, kPrecMul + 1), kPrecMul};
    case Op::Div: return {wrap(*n.a, kPrecMul) + "/" + wrap(*n.b, kPrecMul + 1), kPrecMul};
    case Op::Neg: return {"-" + wrap(*n.a, kPrecNeg), kPrecNeg};
    case Op::Pow: return {wrap(*n.a, kPrecAtom) + "^" + std::to_string(n.index), kPrecPow};
  }
  return {"0", kPrecAtom};
}

}  // namespace

std::string HoloExpr::to_string() const { return print_node(*node_).first; }

// ---------------------------------------------------------------------------
// parsing

namespace {

enum class Tok { Number, Imag, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, LBracket, RBracket, Comma, End };

struct Token {
  Tok kind;
  std::size_t pos;
  double number = 0.0;
  std::string text;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) ++i;
      if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
        if (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
          i = j;
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        }
      }
      double value = 0.0;
      auto res = std::from_chars(s.data() + start, s.data() + i, value);
      if (res.ec != std::errc() || res.ptr != s.data() + i) throw ParseError(ErrorCode::Parse, "malformed number", start);
      Tok kind = Tok::Number;
      if (i < s.size() && s[i] == 'i' && !(i + 1 < s.size() && std::isalnum(static_cast<unsigned char>(s[i + 1])))) {
        kind = Tok::Imag;
        ++i;
      }
      out.push_back({kind, start, value, {}});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, start, 0.0, std::string(s.substr(start, i - start))});
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '/': kind = Tok::Slash; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case ',': kind = Tok::Comma; break;
      default: throw ParseError(ErrorCode::Parse, std::string("unexpected character '") + c + "'", start);
    }
    out.push_back({kind, start, 0.0, {}});
    ++i;
  }
  out.push_back({Tok::End, s.size(), 0.0, {}});
  return out;
}

bool is_non_holomorphic_name(const std::string& id) {
  static const char* names[] = {"conj", "conjugate", "bar", "abs", "re", "Re", "real", "im", "Im", "imag", "arg", "norm"};
  for (const char* n : names)
    if (id == n) return true;
  return false;
}

class Parser {
 public:
  Parser(std::string_view text, int dim) : toks_(tokenize(text)), dim_(dim) {}

  HoloExpr expression() {
    HoloExpr e = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool plus = next().kind == Tok::Plus;
      HoloExpr r = term();
      e = plus ? e + r : e - r;
    }
    return e;
  }

  std::vector<HoloExpr> component_list() {
    expect(Tok::LParen, "'('");
    std::vector<HoloExpr> comps;
    comps.push_back(expression());
    while (peek().kind == Tok::Comma) {
      next();
      comps.push_back(expression());
    }
    expect(Tok::RParen, "')' or ','");
    return comps;
  }

  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == Tok::End; }
  void expect_end() {
    if (!at_end()) throw ParseError(ErrorCode::Parse, "unexpected trailing input", peek().pos);
  }

 private:
  const Token& next() { return toks_[pos_++]; }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) throw ParseError(ErrorCode::Parse, std::string("expected ") + what, peek().pos);
    next();
  }

  HoloExpr term() {
    HoloExpr e = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      const Token& op = next();
      HoloExpr r = unary();
      if (op.kind == Tok::Star) {
        e = e * r;
      } else {
        if (r.is_zero()) throw ParseError(ErrorCode::Parse, "division by zero", op.pos);
        e = e / r;
      }
    }
    return e;
  }

  HoloExpr unary() {
    if (peek().kind == Tok::Minus) {
      next();
      return -unary();
    }
    if (peek().kind == Tok::Plus) {
      next();
      return unary();
    }
    return power();
  }

  HoloExpr power() {
    HoloExpr base = primary();
    if (peek().kind == Tok::Caret) {
      next();
      int sign = 1;
      if (peek().kind == Tok::Minus || peek().kind == Tok::Plus) sign = next().kind == Tok::Minus ? -1 : 1;
      const Token& t = peek();
      if (t.kind != Tok::Number || t.number != std::floor(t.number) || std::abs(t.number) > 1e6)
        throw ParseError(ErrorCode::Parse, "exponent must be an integer literal", t.pos);
      next();
      const int k = sign * static_cast<int>(t.number);
      if (k < 0 && base.is_zero()) throw ParseError(ErrorCode::Parse, "negative power of zero", t.pos);
      return HoloExpr::pow(base, k);
    }
    return base;
  }

  HoloExpr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: next(); return HoloExpr::constant(t.number);
      case Tok::Imag: next(); return HoloExpr::constant(Complex(0.0, t.number));
      case Tok::LParen: {
        next();
        HoloExpr e = expression();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident: return identifier();
      default: throw ParseError(ErrorCode::Parse, "expected an operand", t.pos);
    }
  }

  HoloExpr identifier() {
    const Token t = next();
    const std::string& id = t.text;
    if (id == "i") return HoloExpr::constant(Complex(0.0, 1.0));
    if (is_non_holomorphic_name(id))
      throw ParseError(ErrorCode::Holomorphy, "'" + id + "' is not holomorphic and cannot appear in a field", t.pos);
    if (id == "inner") return inner_call(t);
    if (id.size() >= 2 && id[0] == 'z') {
      bool digits = true;
      for (std::size_t k = 1; k < id.size(); ++k) digits = digits && std::isdigit(static_cast<unsigned char>(id[k]));
      if (digits) {
        const int j = std::stoi(id.substr(1));
        if (j >= 1 && j <= dim_) return HoloExpr::variable(j - 1);
        throw ParseError(ErrorCode::UnknownIdentifier, "variable '" + id + "' outside z1..z" + std::to_string(dim_), t.pos);
      }
    }
    throw ParseError(ErrorCode::UnknownIdentifier, "unknown identifier '" + id + "'", t.pos);
  }

  HoloExpr inner_call(const Token& at) {
    expect(Tok::LParen, "'(' after inner");
    const Token& z = peek();
    if (z.kind != Tok::Ident || z.text != "z") throw ParseError(ErrorCode::Parse, "inner expects 'z' as first argument", z.pos);
    next();
    expect(Tok::Comma, "','");
    expect(Tok::LBracket, "'['");
    std::vector<Complex> coeffs;
    for (;;) {
      const std::size_t p = peek().pos;
      HoloExpr c = expression();
      if (!c.is_constant()) throw ParseError(ErrorCode::Parse, "inner coefficients must be constants", p);
      coeffs.push_back(c.constant_value());
      if (peek().kind == Tok::Comma) {
        next();
        continue;
      }
      break;
    }
    expect(Tok::RBracket, "']'");
    expect(Tok::RParen, "')'");
    if (static_cast<int>(coeffs.size()) != dim_)
      throw ParseError(ErrorCode::Parse, "inner coefficient vector must have " + std::to_string(dim_) + " entries", at.pos);
    return HoloExpr::inner_with(std::move(coeffs));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int dim_;
};

}  // namespace

HoloExpr parse_expression(std::string_view text, int dim) {
  Parser p(text, dim);
  HoloExpr e = p.expression();
  p.expect_end();
  return e;
}

std::vector<HoloExpr> parse_components(std::string_view text, int dim) {
  if (dim <= 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  if (dim == 1) return {parse_expression(text, dim)};
  Parser p(text, dim);
  std::vector<HoloExpr> comps = p.component_list();
  p.expect_end();
  if (static_cast<int>(comps.size()) != dim)
    throw ParseError(ErrorCode::Parse,
                     "expected " + std::to_string(dim) + " components, found " + std::to_string(comps.size()), 0);
  return comps;
}

Complex parse_complex(std::string_view text) {
  HoloExpr e = parse_expression(text, 0);
  return e.constant_value();
}

CVec parse_point(std::string_view text, int dim) {
  std::string s(text);
  auto trim = [](std::string x) {
    const auto b = x.find_first_not_of(" \t");
    const auto e = x.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
  };
  s = trim(s);
  if (s.size() >= 2 && s[0] == 'e' && std::isdigit(static_cast<unsigned char>(s[1]))) {
    bool digits = true;
    for (std::size_t k = 1; k < s.size(); ++k) digits = digits && std::isdigit(static_cast<unsigned char>(s[k]));
    if (digits) {
      const int j = std::stoi(s.substr(1));
      if (j < 1 || j > dim) throw Error(ErrorCode::InvalidArgument, "unit vector index outside 1.." + std::to_string(dim));
      return unit_vector(dim, j - 1);
    }
  }
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  if (parts.size() == 1 && dim > 1) {
    const Complex c = parse_complex(parts[0]);
    if (c != Complex(0.0)) throw Error(ErrorCode::InvalidArgument, "point needs " + std::to_string(dim) + " coordinates");
    return CVec::Zero(dim);
  }
  if (static_cast<int>(parts.size()) != dim)
    throw Error(ErrorCode::InvalidArgument, "point needs " + std::to_string(dim) + " coordinates");
  CVec z(dim);
  for (int j = 0; j < dim; ++j) z(j) = parse_complex(parts[j]);
  return z;
}

}  // namespace holodyn
