#include "holodyn/scenarios.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "holodyn/boundary_analysis.hpp"
#include "holodyn/catalog_data.hpp"
#include "holodyn/certification.hpp"
#include "holodyn/flow.hpp"
#include "holodyn/resolvent.hpp"
#include "holodyn/sampling.hpp"

namespace holodyn {

using nlohmann::json;

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  throw Error(ErrorCode::InvalidArgument, "expected a number or an [re, im] pair, got " + j.dump());
}

CVec vector_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::InvalidArgument, "expected a non-empty array of coordinates, got " + j.dump());
  CVec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

json complex_to_json(Complex c) {
  if (c.imag() == 0.0) return c.real();
  return json::array({c.real(), c.imag()});
}

json vector_to_json(const CVec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

VectorField Scenario::field() const {
  VectorField f = quadratic ? quadratic_field(quadratic->a, quadratic->A, quadratic->b) : parse_field(field_text, dim);
  if (conjugate_beta) f = conjugate_field(f, parabolic_automorphism(*conjugate_beta, 0.0, dim));
  return f;
}

CVec Scenario::point(const std::string& name) const {
  if (auto it = points.find(name); it != points.end()) return it->second;
  if (name == "origin") return CVec::Zero(dim);
  if (name.size() >= 2 && name[0] == 'e') {
    try {
      const int k = std::stoi(name.substr(1));
      if (k >= 1 && k <= dim) return unit_vector(dim, k - 1);
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorCode::InvalidArgument, "scenario " + this->name + " has no point named " + name);
}

Scenario scenario_from_json(const json& j) {
  try {
    Scenario s;
    s.name = j.at("name").get<std::string>();
    s.description = j.value("description", "");
    s.dim = j.at("dim").get<int>();
    if (s.dim < 1) throw Error(ErrorCode::UnsupportedDimension, "scenario dimension must be positive");
    if (j.contains("quadratic")) {
      const json& q = j.at("quadratic");
      QuadraticParams p;
      p.a = vector_from_json(q.at("a"));
      p.b = vector_from_json(q.at("b"));
      const json& rows = q.at("A");
      p.A = CMat(static_cast<Eigen::Index>(rows.size()), s.dim);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const CVec row = vector_from_json(rows[r]);
        if (row.size() != s.dim) throw Error(ErrorCode::InvalidArgument, "quadratic matrix row has wrong length");
        p.A.row(static_cast<Eigen::Index>(r)) = row.transpose();
      }
      s.quadratic = std::move(p);
    } else {
      s.field_text = j.at("field").get<std::string>();
    }
    s.generator = j.value("generator", true);
    if (j.contains("conjugate_beta")) s.conjugate_beta = j.at("conjugate_beta").get<double>();
    if (j.contains("points"))
      for (const auto& [k, v] : j.at("points").items()) {
        s.points[k] = vector_from_json(v);
        if (s.points[k].size() != s.dim) throw Error(ErrorCode::InvalidArgument, "point " + k + " has the wrong dimension");
      }
    if (j.contains("interior_zeros"))
      for (const auto& z : j.at("interior_zeros")) s.interior_zeros.push_back(vector_from_json(z));
    if (j.contains("expectations"))
      for (const auto& e : j.at("expectations")) {
        Expectation x;
        x.id = e.at("id").get<std::string>();
        x.kind = e.at("kind").get<std::string>();
        x.origin = e.value("origin", "reference");
        x.params = e;
        s.expectations.push_back(std::move(x));
      }
    s.field();  // validate eagerly
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed scenario: ") + e.what());
  }
}

json scenario_to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["description"] = s.description;
  j["dim"] = s.dim;
  if (s.quadratic) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < s.quadratic->A.rows(); ++r) rows.push_back(vector_to_json(s.quadratic->A.row(r).transpose()));
    j["quadratic"] = {{"a", vector_to_json(s.quadratic->a)}, {"A", rows}, {"b", vector_to_json(s.quadratic->b)}};
  } else {
    j["field"] = s.field_text;
  }
  if (!s.generator) j["generator"] = false;
  if (s.conjugate_beta) j["conjugate_beta"] = *s.conjugate_beta;
  json pts = json::object();
  for (const auto& [k, v] : s.points) pts[k] = vector_to_json(v);
  j["points"] = pts;
  json zeros = json::array();
  for (const auto& z : s.interior_zeros) zeros.push_back(vector_to_json(z));
  j["interior_zeros"] = zeros;
  json ex = json::array();
  for (const auto& e : s.expectations) ex.push_back(e.params);
  j["expectations"] = ex;
  return j;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open scenario file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, "scenario file " + path + ": " + e.what());
  }
  return scenario_from_json(j);
}

namespace {

const json& catalog_json() {
  static const json j = json::parse(kCatalogJson);
  return j;
}

}  // namespace

std::string catalog_version() { return catalog_json().at("version").get<std::string>(); }

const std::vector<Scenario>& list_scenarios() {
  static const std::vector<Scenario> all = [] {
    std::vector<Scenario> v;
    for (const auto& s : catalog_json().at("scenarios")) v.push_back(scenario_from_json(s));
    return v;
  }();
  return all;
}

const Scenario& find_scenario(std::string_view name) {
  for (const auto& s : list_scenarios())
    if (s.name == name) return s;
  throw Error(ErrorCode::UnknownScenario, "unknown scenario: " + std::string(name));
}

bool ScenarioReport::pass() const {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

namespace {

std::string fmt(double x) {
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

std::string fmt(Complex c) {
  if (c.imag() == 0.0) return fmt(c.real());
  std::ostringstream os;
  os << std::setprecision(10) << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
  return os.str();
}

std::string fmt(const CVec& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v(i));
  return s + ")";
}

struct Runner {
  const Scenario& s;
  const ScenarioOptions& opt;
  VectorField field;
  FieldFn fn;

  SampleSpec spec() const {
    SampleSpec sp;
    sp.count = opt.samples;
    sp.seed = opt.seed;
    return sp;
  }

  double tol_of(const json& p, double fallback) const { return p.value("tol", fallback); }

  void verdict_row(ScenarioRow& row, const json& p, const CertReport& r) const {
    row.expected = p.value("verdict", "pass");
    row.actual = verdict_name(r.verdict);
    row.tolerance = r.tolerance;
    row.pass = row.expected == row.actual;
    row.detail = "min_margin=" + fmt(r.min_margin) + " samples=" + std::to_string(r.samples_used);
    if (!r.note.empty()) row.detail += " note=" + r.note;
  }

  void value_row(ScenarioRow& row, double expected, double actual, double tol) const {
    row.expected = fmt(expected);
    row.actual = fmt(actual);
    row.tolerance = tol;
    row.pass = std::abs(actual - expected) <= tol;
  }

  ProjectionDevice device(const json& p) const {
    const CVec pt = s.point(p.at("point").get<std::string>());
    const std::string kind = p.value("device", "axis");
    if (kind == "axis") return geodesic_device(BallPoint(CVec::Zero(s.dim)), BoundaryPoint(pt));
    if (kind == "carrier") {
      if (!s.conjugate_beta) throw Error(ErrorCode::InvalidArgument, "carrier device needs a conjugated scenario");
      return ProjectionDevice::from_carrier(parabolic_automorphism(*s.conjugate_beta, 0.0, s.dim));
    }
    throw Error(ErrorCode::InvalidArgument, "unknown device kind " + kind);
  }

  CVec closed_form_flow(const json& p, const CVec& z, double t) const {
    const std::string formula = p.at("formula").get<std::string>();
    if (formula == "disc_hyperbolic") return CVec::Constant(1, std::tanh(t + std::atanh(z(0))));
    if (formula == "disc_parabolic") {
      const Complex d = 1.0 - z(0);
      return CVec::Constant(1, 1.0 - d / (1.0 + t * d));
    }
    if (formula == "unos") {
      CVec w = z;
      w(1) = std::exp(-t / (1.0 - z(0))) * z(1);
      return w;
    }
    if (formula == "scalar_linear") return std::exp(complex_from_json(p.at("coefficient")) * t) * z;
    throw Error(ErrorCode::InvalidArgument, "unknown closed-form flow " + formula);
  }

  std::vector<CVec> fixed_candidates(const json& p) const {
    if (p.contains("candidates")) {
      std::vector<CVec> v;
      for (const auto& c : p.at("candidates")) v.push_back(vector_from_json(c));
      return v;
    }
    if (s.interior_zeros.empty()) throw Error(ErrorCode::InvalidArgument, "scenario lists no interior zeros");
    return s.interior_zeros;
  }

  void run(const Expectation& e, ScenarioRow& row) const {
    const json& p = e.params;
    const std::string& k = e.kind;
    if (k == "certify_green") {
      verdict_row(row, p, certify_generator_green(fn, spec(), opt.tolerance));
    } else if (k == "certify_ball") {
      verdict_row(row, p, certify_generator_ball(fn, spec(), opt.tolerance));
    } else if (k == "certify_shift") {
      verdict_row(row, p, certify_generator_shift(fn, spec(), default_shift_grid(), opt.tolerance));
    } else if (k == "certify_group") {
      const CertReport r = certify_group(fn, spec(), opt.tolerance);
      verdict_row(row, p, r);
      const double bound = p.value("max_abs_margin", opt.tolerance);
      row.pass = row.pass && r.max_abs_margin <= bound;
      row.detail += " max_abs_margin=" + fmt(r.max_abs_margin);
    } else if (k == "certify_stationary") {
      verdict_row(row, p, certify_stationary(fn, s.point(p.at("point").get<std::string>()), spec(), opt.tolerance));
    } else if (k == "certify_brfp_rate") {
      verdict_row(row, p, certify_brfp_rate(fn, s.point(p.at("point").get<std::string>()), p.at("beta").get<double>(), spec(), opt.tolerance));
    } else if (k == "certify_quadratic") {
      if (!s.quadratic) throw Error(ErrorCode::InvalidArgument, "certify_quadratic needs quadratic parameters");
      const double tol = tol_of(p, opt.tolerance);
      const CertReport r = certify_quadratic(s.quadratic->a, s.quadratic->A, s.quadratic->b, 2000, opt.seed, tol);
      const double margin = p.at("margin").get<double>();
      const bool group = p.value("group_candidate", false);
      row.expected = p.value("verdict", "pass") + " margin=" + fmt(margin) + " group=" + (group ? "yes" : "no");
      row.actual = std::string(verdict_name(r.verdict)) + " margin=" + fmt(r.min_margin) + " group=" +
                   (r.group_candidate ? "yes" : "no");
      row.tolerance = tol;
      row.pass = p.value("verdict", "pass") == verdict_name(r.verdict) && std::abs(r.min_margin - margin) <= tol &&
                 group == r.group_candidate;
    } else if (k == "berkson_porta") {
      verdict_row(row, p, verify_berkson_porta(fn, complex_from_json(p.at("b")), spec(), opt.tolerance));
    } else if (k == "brfp_scan") {
      const BrfpScan r = brfp_scan(fn, s.point(p.at("point").get<std::string>()), 32, opt.seed, opt.depth);
      row.expected = p.at("verdict").get<std::string>();
      row.actual = brfp_verdict_name(r.verdict);
      row.pass = row.expected == row.actual;
      row.detail = "beta=" + fmt(r.beta) + " rate_b=" + fmt(r.rate_b);
      if (p.contains("beta")) {
        const double tol = tol_of(p, 1e-6);
        row.expected += " beta=" + fmt(p.at("beta").get<double>());
        row.actual += " beta=" + fmt(r.beta);
        row.tolerance = tol;
        row.pass = row.pass && std::abs(r.beta - p.at("beta").get<double>()) <= tol;
      }
      if (!r.note.empty()) row.detail += " note=" + r.note;
    } else if (k == "radial_slope") {
      const SlopeEstimate r = radial_slope(geodesic_generator(fn, device(p)), opt.depth);
      const double tol = tol_of(p, 1e-8);
      const Complex expected = complex_from_json(p.at("value"));
      row.expected = fmt(expected);
      row.tolerance = tol;
      if (r.extrapolated) {
        row.actual = fmt(*r.extrapolated);
        row.pass = std::abs(*r.extrapolated - expected) <= tol;
      } else {
        row.actual = "unbounded";
      }
      row.detail = "residual=" + fmt(r.residual);
    } else if (k == "estimate_rate_b") {
      const RateEstimate r = estimate_rate(fn, s.point(p.at("point").get<std::string>()), spec());
      if (p.value("unbounded", false)) {
        row.expected = "-inf";
        row.actual = fmt(r.b);
        row.pass = r.unbounded;
      } else {
        value_row(row, p.at("value").get<double>(), r.b, tol_of(p, 1e-3));
      }
    } else if (k == "dilatation") {
      const DilatationFit fit = dilatation_semigroup(fn, {0.25, 0.5, 1.0, 1.5}, device(p), opt.depth);
      value_row(row, p.at("beta").get<double>(), fit.beta, tol_of(p, 1e-3));
      row.pass = row.pass && fit.verdict == BrfpVerdict::Brfp;
      row.detail = std::string("verdict=") + brfp_verdict_name(fit.verdict) + " residual=" + fmt(fit.residual);
    } else if (k == "flow_closed_form") {
      const double tmax = p.value("tmax", 5.0);
      const double tol = tol_of(p, 1e-8);
      std::vector<double> times;
      for (double t = 0.5; t <= tmax + 1e-12; t += 0.5) times.push_back(t);
      double worst = 0.0;
      for (const CVec& z : ball_samples(s.dim, 16, opt.seed, 0.9)) {
        const GridFlow g = flow_on_grid(fn, z, times, precise_flow_options());
        for (std::size_t i = 0; i < times.size(); ++i)
          worst = std::max(worst, (g.points[i] - closed_form_flow(p, z, times[i])).norm());
      }
      row.expected = "<= " + fmt(tol);
      row.actual = fmt(worst);
      row.tolerance = tol;
      row.pass = worst <= tol;
    } else if (k == "attractor") {
      const AttractorEstimate a = longtime_attractor(fn, vector_from_json(p.at("z")), p.value("horizon", 60.0));
      const CVec limit = vector_from_json(p.at("limit"));
      row.expected = p.at("attractor").get<std::string>() + " " + fmt(limit);
      row.actual = std::string(attractor_kind_name(a.kind)) + " " + fmt(a.limit);
      row.tolerance = tol_of(p, 1e-4);
      row.pass = p.at("attractor").get<std::string>() == attractor_kind_name(a.kind) &&
                 (a.limit - limit).norm() <= row.tolerance;
    } else if (k == "resolvent_value") {
      const ResolventPoint r = resolvent_point(field, vector_from_json(p.at("z")), p.at("t").get<double>());
      const CVec w = vector_from_json(p.at("w"));
      row.expected = fmt(w);
      row.actual = fmt(r.w);
      row.tolerance = tol_of(p, 1e-10);
      row.pass = (r.w - w).norm() <= row.tolerance;
      row.detail = "residual=" + fmt(r.residual) + " steps=" + std::to_string(r.continuation_steps);
    } else if (k == "resolvent_closed_form") {
      std::vector<double> ts = p.at("t_grid").get<std::vector<double>>();
      std::vector<Complex> zs;
      for (const auto& z : p.at("z_grid")) zs.push_back(complex_from_json(z));
      const ClosedFormReport r = resolvent_vs_closed_form(ts, zs);
      const double tol = tol_of(p, 1e-10);
      row.expected = "<= " + fmt(tol);
      row.actual = fmt(r.max_discrepancy);
      row.tolerance = tol;
      row.pass = r.failures == 0 && r.max_discrepancy <= tol;
      row.detail = "worst_t=" + fmt(r.worst_t) + " worst_z=" + fmt(r.worst_z) + " failures=" + std::to_string(r.failures);
    } else if (k == "resolvent_limit") {
      const GeneratorLimit g = resolvent_generator_limit(field, vector_from_json(p.at("z")));
      const double tol = tol_of(p, 1e-7);
      row.expected = fmt(g.field_value);
      row.actual = fmt(g.estimate);
      row.tolerance = tol;
      row.pass = g.error <= tol;
      row.detail = "error=" + fmt(g.error);
    } else if (k == "resolvent_fixed_points") {
      const double tol = tol_of(p, 1e-10);
      const FixedPointReport r = resolvent_fixed_points_check(field, fixed_candidates(p), {0.1, 1.0, 10.0}, tol);
      row.expected = "<= " + fmt(tol);
      row.actual = fmt(r.worst);
      row.tolerance = tol;
      row.pass = r.pass;
    } else if (k == "resolvent_horosphere") {
      const auto radii = p.at("radii").get<std::vector<double>>();
      const CVec tau = s.point(p.at("point").get<std::string>());
      if (p.contains("error")) {
        row.expected = "error " + p.at("error").get<std::string>();
        try {
          const CertReport r = resolvent_horosphere_check(field, tau, radii, spec(), {0.1, 1.0, 10.0}, opt.tolerance);
          row.actual = verdict_name(r.verdict);
        } catch (const Error& err) {
          row.actual = std::string("error ") + error_code_name(err.code());
          row.detail = err.what();
        }
        row.pass = row.expected == row.actual;
      } else {
        verdict_row(row, p, resolvent_horosphere_check(field, tau, radii, spec(), {0.1, 1.0, 10.0}, opt.tolerance));
      }
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown expectation kind " + k);
    }
  }
};

}  // namespace

ScenarioReport run_scenario(const Scenario& s, const ScenarioOptions& opt) {
  ScenarioReport rep;
  rep.name = s.name;
  const VectorField field = s.field();
  const Runner runner{s, opt, field, field.as_function()};
  for (const Expectation& e : s.expectations) {
    ScenarioRow row;
    row.id = e.id;
    row.kind = e.kind;
    row.origin = e.origin;
    try {
      runner.run(e, row);
    } catch (const Error& err) {
      row.pass = false;
      row.actual = std::string("error ") + error_code_name(err.code());
      row.detail = err.what();
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

ScenarioReport run_scenario(std::string_view name, const ScenarioOptions& opt) { return run_scenario(find_scenario(name), opt); }

}  // namespace holodyn
