#include "holodyn/holodyn.h"

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "holodyn/boundary_analysis.hpp"
#include "holodyn/certification.hpp"
#include "holodyn/flow.hpp"
#include "holodyn/expr.hpp"
#include "holodyn/kernels.hpp"
#include "holodyn/resolvent.hpp"
#include "holodyn/sampling.hpp"
#include "holodyn/scenarios.hpp"

using nlohmann::json;
using namespace holodyn;

struct hd_field {
  VectorField field;
  std::string text;
  std::optional<QuadraticParams> quadratic;
};

struct hd_report {
  std::vector<std::string> records;
  std::string csv;
  hd_verdict verdict = HD_INCONCLUSIVE;
};

namespace {

thread_local std::string g_error;
thread_local long g_error_position = -1;

hd_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::Domain: return HD_ERR_DOMAIN;
    case ErrorCode::SingularPoint: return HD_ERR_SINGULAR_POINT;
    case ErrorCode::UnsupportedDimension: return HD_ERR_UNSUPPORTED_DIMENSION;
    case ErrorCode::Parse: return HD_ERR_PARSE;
    case ErrorCode::Holomorphy: return HD_ERR_HOLOMORPHY;
    case ErrorCode::UnknownIdentifier: return HD_ERR_UNKNOWN_IDENTIFIER;
    case ErrorCode::Evaluation: return HD_ERR_EVALUATION;
    case ErrorCode::SingularPair: return HD_ERR_SINGULAR_PAIR;
    case ErrorCode::Consistency: return HD_ERR_CONSISTENCY;
    case ErrorCode::BlowUp: return HD_ERR_BLOW_UP;
    case ErrorCode::NoConvergence: return HD_ERR_NO_CONVERGENCE;
    case ErrorCode::RootSelection: return HD_ERR_ROOT_SELECTION;
    case ErrorCode::Precondition: return HD_ERR_PRECONDITION;
    case ErrorCode::UnknownScenario: return HD_ERR_UNKNOWN_SCENARIO;
    case ErrorCode::InvalidArgument: return HD_ERR_INVALID_ARGUMENT;
  }
  return HD_ERR_INTERNAL;
}

template <class Body>
hd_status guarded(Body&& body) {
  g_error.clear();
  g_error_position = -1;
  try {
    body();
    return HD_OK;
  } catch (const ParseError& e) {
    g_error = e.what();
    g_error_position = static_cast<long>(e.position());
    return status_of(e.code());
  } catch (const Error& e) {
    g_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
    return HD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_error = e.what();
    return HD_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::InvalidArgument, std::string("null argument: ") + what);
}

hd_options options_or_default(const hd_options* opt) {
  hd_options o;
  hd_options_default(&o);
  if (opt) o = *opt;
  if (o.samples == 0) throw Error(ErrorCode::InvalidArgument, "samples must be positive");
  if (!(o.tolerance >= 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be non-negative");
  if (o.depth < 5 || o.depth > 40) throw Error(ErrorCode::InvalidArgument, "depth must lie in [5, 40]");
  if (!(o.radius_cap > 0.0 && o.radius_cap < 1.0)) throw Error(ErrorCode::InvalidArgument, "radius cap must lie in (0, 1)");
  if (o.device_count == 0) throw Error(ErrorCode::InvalidArgument, "device count must be positive");
  return o;
}

SampleSpec spec_of(const hd_options& o) {
  SampleSpec s;
  s.count = o.samples;
  s.seed = o.seed;
  s.radius_cap = o.radius_cap;
  return s;
}

CVec to_vec(const hd_complex* z, int dim) {
  need(z, "point");
  CVec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(z[i].re, z[i].im);
  return v;
}

json cjson(Complex c) { return json::array({c.real(), c.imag()}); }

json vjson(const CVec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(cjson(v(i)));
  return a;
}

json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json base_record(const char* command, const hd_field* f, const hd_options* o) {
  json r;
  r["command"] = command;
  if (f) {
    r["field"] = f->text;
    r["dim"] = f->field.dim();
  }
  if (o) {
    r["seed"] = o->seed;
    r["samples"] = o->samples;
    r["tolerance"] = o->tolerance;
  }
  return r;
}

hd_verdict verdict_of(Verdict v) {
  switch (v) {
    case Verdict::Pass: return HD_PASS;
    case Verdict::Fail: return HD_FAIL;
    default: return HD_INCONCLUSIVE;
  }
}

hd_verdict verdict_of(BrfpVerdict v) {
  switch (v) {
    case BrfpVerdict::Brfp: return HD_PASS;
    case BrfpVerdict::NotBrfp: return HD_FAIL;
    default: return HD_INCONCLUSIVE;
  }
}

// Fail dominates inconclusive, which dominates pass.
hd_verdict combine(hd_verdict a, hd_verdict b) {
  if (a == HD_FAIL || b == HD_FAIL) return HD_FAIL;
  if (a == HD_INCONCLUSIVE || b == HD_INCONCLUSIVE) return HD_INCONCLUSIVE;
  return HD_PASS;
}

void add_cert(json& r, const CertReport& c) {
  r["verdict"] = verdict_name(c.verdict);
  r["min_margin"] = num(c.min_margin);
  r["max_abs_margin"] = num(c.max_abs_margin);
  r["samples_used"] = c.samples_used;
  r["samples_skipped"] = c.samples_skipped;
  r["group_candidate"] = c.group_candidate;
  json w = json::array();
  for (const CVec& v : c.witness) w.push_back(vjson(v));
  r["witness"] = w;
  r["note"] = c.note;
}

void add_slope(json& r, const SlopeEstimate& s) {
  r["bounded"] = s.bounded;
  r["slope"] = s.extrapolated ? cjson(*s.extrapolated) : json(nullptr);
  r["extrapolation_residual"] = num(s.residual);
  r["note"] = s.note;
}

hd_report* emit(std::vector<json> records, hd_verdict v, std::string csv = {}) {
  auto* rep = new hd_report;
  for (const json& j : records) rep->records.push_back(j.dump());
  rep->verdict = v;
  rep->csv = std::move(csv);
  return rep;
}

void set_out(hd_report** out, hd_report* rep) {
  if (out)
    *out = rep;
  else
    delete rep;
}

Scenario resolve_scenario(const char* name) {
  need(name, "scenario");
  const std::string n(name);
  if (n.size() > 5 && n.ends_with(".json") && std::filesystem::exists(n)) return load_scenario_file(n);
  return find_scenario(n);
}

hd_field* wrap(VectorField f, std::optional<QuadraticParams> q = std::nullopt) {
  auto* h = new hd_field{std::move(f), {}, std::move(q)};
  h->text = h->field.to_string();
  return h;
}

QuadraticParams quadratic_of(int dim, const hd_complex* a, const hd_complex* A, const hd_complex* b) {
  if (dim < 1) throw Error(ErrorCode::UnsupportedDimension, "dimension must be positive");
  need(A, "A");
  QuadraticParams q{to_vec(a, dim), CMat(dim, dim), to_vec(b, dim)};
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) q.A(i, j) = Complex(A[i * dim + j].re, A[i * dim + j].im);
  return q;
}

}  // namespace

extern "C" {

const char* hd_version(void) { return HOLODYN_VERSION; }

void hd_options_default(hd_options* opt) {
  if (!opt) return;
  opt->seed = 1;
  opt->samples = 1000;
  opt->tolerance = kDefaultTolerance;
  opt->depth = kDefaultDepth;
  opt->radius_cap = 0.999;
  opt->device_count = 32;
}

const char* hd_status_name(hd_status s) {
  switch (s) {
    case HD_OK: return "ok";
    case HD_ERR_NULL_ARGUMENT: return "null-argument";
    case HD_ERR_INTERNAL: return "internal";
    default: break;
  }
  if (s > HD_OK && s <= HD_ERR_INVALID_ARGUMENT) return error_code_name(static_cast<ErrorCode>(s - 1));
  return "unknown";
}

const char* hd_verdict_name(hd_verdict v) {
  switch (v) {
    case HD_PASS: return "pass";
    case HD_FAIL: return "fail";
    default: return "inconclusive";
  }
}

const char* hd_last_error(void) { return g_error.c_str(); }
long hd_last_error_position(void) { return g_error_position; }

hd_status hd_field_parse(const char* text, int dim, hd_field** out) {
  if (!text || !out) return HD_ERR_NULL_ARGUMENT;
  return guarded([&] {
    if (dim < 1) throw Error(ErrorCode::UnsupportedDimension, "dimension must be positive");
    *out = wrap(parse_field(text, dim));
  });
}

hd_status hd_field_quadratic(int dim, const hd_complex* a, const hd_complex* A, const hd_complex* b, hd_field** out) {
  if (!a || !A || !b || !out) return HD_ERR_NULL_ARGUMENT;
  return guarded([&] {
    QuadraticParams q = quadratic_of(dim, a, A, b);
    VectorField f = quadratic_field(q.a, q.A, q.b);
    *out = wrap(std::move(f), std::move(q));
  });
}

hd_status hd_field_from_scenario(const char* scenario, hd_field** out) {
  if (!scenario || !out) return HD_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const Scenario s = resolve_scenario(scenario);
    *out = wrap(s.field(), s.quadratic);
  });
}

void hd_field_free(hd_field* f) { delete f; }

int hd_field_dim(const hd_field* f) { return f ? f->field.dim() : 0; }

const char* hd_field_text(const hd_field* f) { return f ? f->text.c_str() : ""; }

hd_status hd_field_eval(const hd_field* f, const hd_complex* z, hd_complex* out) {
  if (!f || !z || !out) return HD_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const CVec v = f->field.eval(to_vec(z, f->field.dim()));
    for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = {v(i).real(), v(i).imag()};
  });
}

hd_status hd_parse_point(const char* scenario, const char* text, int dim, hd_complex* out) {
  if (!text || !out) return HD_ERR_NULL_ARGUMENT;
  return guarded([&] {
    if (dim < 1) throw Error(ErrorCode::UnsupportedDimension, "dimension must be positive");
    CVec p;
    if (scenario) {
      const Scenario s = resolve_scenario(scenario);
      if (s.dim != dim) throw Error(ErrorCode::InvalidArgument, "scenario dimension differs from requested dimension");
      if (auto it = s.points.find(text); it != s.points.end()) p = it->second;
    }
    if (p.size() == 0) p = parse_point(text, dim);
    for (int i = 0; i < dim; ++i) out[i] = {p(i).real(), p(i).imag()};
  });
}

void hd_report_free(hd_report* r) { delete r; }
hd_verdict hd_report_verdict(const hd_report* r) { return r ? r->verdict : HD_INCONCLUSIVE; }
size_t hd_report_record_count(const hd_report* r) { return r ? r->records.size() : 0; }
const char* hd_report_record(const hd_report* r, size_t i) {
  return (r && i < r->records.size()) ? r->records[i].c_str() : nullptr;
}
const char* hd_report_csv(const hd_report* r) { return r ? r->csv.c_str() : ""; }

hd_status hd_certify(const hd_field* f, hd_cert_method method, const hd_options* opt, hd_report** out) {
  if (!f || !out) return HD_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const hd_options o = options_or_default(opt);
    const FieldFn fn = f->field.as_function();
    const SampleSpec sp = spec_of(o);
    std::vector<std::pair<const char*, hd_cert_method>> methods;
    if (method == HD_CERT_ALL)
      methods = {{"green", HD_CERT_GREEN}, {"ball", HD_CERT_BALL}, {"shift", HD_CERT_SHIFT}, {"group", HD_CERT_GROUP}};
    else if (method == HD_CERT_GREEN)
      methods = {{"green", method}};
    else if (method == HD_CERT_BALL)
      methods = {{"ball", method}};
    else if (method == HD_CERT_SHIFT)
      methods = {{"shift", method}};
    else if (method == HD_CERT_GROUP)
      methods = {{"group", method}};
    else if (method == HD_CERT_QUADRATIC) {
      if (!f->quadratic) throw Error(ErrorCode::InvalidArgument, "field was not built from quadratic parameters");
      const CertReport c = certify_quadratic(f->quadratic->a, f->quadratic->A, f->quadratic->b, o.samples, o.seed, o.tolerance);
      json r = base_record("certify", f, &o);
      r["method"] = "quadratic";
      add_cert(r, c);
      *out = emit({r}, verdict_of(c.verdict));
      return;
    } else
      throw Error(ErrorCode::InvalidArgument, "unknown certification method");
    std::vector<json> recs;
    hd_verdict v = HD_PASS;
    for (const auto& [name, m] : methods) {
      CertReport c;
      switch (m) {
        case HD_CERT_GREEN: c = certify_generator_green(fn, sp, o.tolerance); break;
        case HD_CERT_BALL: c = certify_generator_ball(fn, sp, o.tolerance); break;
        case HD_CERT_SHIFT: c = certify_generator_shift(fn, sp, default_shift_grid(), o.tolerance); break;
        default: c = certify_group(fn, sp, o.tolerance); break;
      }
      json r = base_record("certify", f, &o);
      r["method"] = name;
      add_cert(r, c);
      recs.push_back(r);
      // A failed group test does not make a field a non-generator.
      if (m != HD_CERT_GROUP || method == HD_CERT_GROUP) v = combine(v, verdict_of(c.verdict));
    }
    *out = emit(recs, v);
  });
}

hd_status hd_certify_quadratic(int dim, const hd_complex* a, const hd_complex* A, const hd_complex* b,
                               const hd_options* opt, hd_report** out) {
  if (!a || !A || !b || !out) return HD_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const hd_options o = options_or_default(opt);
    const QuadraticParams q = quadratic_of(dim, a, A, b);
    const CertReport c = certify_quadratic(q.a, q.A, q.b, o.samples, o.seed, o.tolerance);
    json r = base_record("certify", nullptr, &o);
    r["method"] = "quadratic";
    r["dim"] = dim;
    r["a"] = vjson(q.a);
    json rows = json::array();
    for (int i = 0; i < dim; ++i) rows.push_back(vjson(q.A.row(i).transpose()));
    r["A"] = rows;
    r["b"] = vjson(q.b);
    add_cert(r, c);
    *out = emit({r}, verdict_of(c.verdict));
  });
}

hd_status hd_certify_stationary(const hd_field* f, const hd_complex* p, const hd_options* opt, hd_report** out) {
  if (!f || !p || !out) return HD_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const hd_options o = options_or_default(opt);
    const CVec pt = to_vec(p, f->field.dim());
    const CertReport c = certify_stationary(f->field.as_function(), pt, spec_of(o), o.tolerance);
    json r = base_record("certify", f, &o);
    r["method"] = "stationary";
    r["point"] = vjson(pt);
    add_cert(r, c);
    *out = emit({r}, verdict_of(c.verdict));
  });
}

hd_status hd_certify_brfp_rate(const hd_field* f, const hd_complex* p, double beta, const hd_options* opt,
                               hd_report** out) {
  if (!f || !p || !out) return HD_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const hd_options o = options_or_default(opt);
    const CVec pt = to_vec(p, f->field.dim());
    const CertReport c = certify_brfp_rate(f->field.as_function(), pt, beta, spec_of(o), o.tolerance);
    json r = base_record("certify", f, &o);
    r["method"] = "brfp-rate";
    r["point"] = vjson(pt);
    r["beta"] = beta;
    add_cert(r, c);
    *out = emit({r}, verdict_of(c.verdict));
  });
}

hd_status hd_flow(const hd_field* f, const hd_complex* z0, double t_end, const hd_options* opt, hd_report** out) {
  if (!f || !z0 || !out) return HD_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const hd_options o = options_or_default(opt);
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error(ErrorCode::InvalidArgument, "t must be finite and non-negative");
    const CVec z = to_vec(z0, f->field.dim());
    if (!(z.norm() < 1.0)) throw Error(ErrorCode::Domain, "initial point must lie in the open ball");
    json r = base_record("flow", f, &o);
    r["z0"] = vjson(z);
    r["t_end"] = t_end;
    try {
      const Trajectory tr = integrate(f->field.as_function(), z, t_end);
      r["status"] = "ok";
      r["final"] = vjson(tr.points.back());
      r["accepted_steps"] = tr.accepted_steps;
      r["rejected_steps"] = tr.rejected_steps;
      r["max_local_error"] = num(tr.max_local_error);
      r["saturated"] = tr.saturated;
      r["saturation_time"] = tr.saturated ? json(tr.saturation_time) : json(nullptr);
      std::ostringstream csv;
      write_trajectory_csv(csv, tr);
      *out = emit({r}, HD_PASS, csv.str());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BlowUp) throw;
      r["status"] = "blow-up";
      r["message"] = e.what();
      *out = emit({r}, HD_FAIL);
    }
  });
}

hd_status hd_flow_invariants(const hd_field* f, const hd_complex* p, double beta, const hd_options* opt,
                             hd_report** out) {
  if (!f || !out) return HD_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const hd_options o = options_or_default(opt);
    const int n = f->field.dim();
    const FieldFn fn = f->field.as_function();
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> unit(0.0, 2.0);
    const auto pts = ball_samples(n, 50, o.seed, 0.95);
    std::vector<json> recs;
    hd_verdict v = HD_PASS;
    auto record = [&](const char* name, auto&& run) {
      json r = base_record("flow", f, &o);
      r["check"] = name;
      hd_verdict cv = HD_PASS;
      double worst = 0.0;
      try {
        worst = run();
        if (worst > 0.0) cv = HD_FAIL;
      } catch (const Error& e) {
        cv = HD_INCONCLUSIVE;
        r["message"] = e.what();
      }
      r["verdict"] = hd_verdict_name(cv);
      r["worst_violation"] = num(worst);
      recs.push_back(r);
      v = combine(v, cv);
    };
    // Each lambda returns the worst violation beyond tolerance (0 when all pass).
    record("semigroup", [&] {
      double bad = 0.0;
      for (const CVec& z : pts) {
        const double t = unit(rng), s = unit(rng);
        const FlowCheck c = semigroup_check(fn, z, t, s, 1e-8);
        if (!c.pass) bad = std::max(bad, c.worst);
      }
      return bad;
    });
    record("kobayashi", [&] {
      double bad = 0.0;
      const std::vector<double> times{0.5, 1.0, 2.0, 5.0};
      for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
        const FlowCheck c = kobayashi_monotone_check(fn, pts[i], pts[i + 1], times, 1e-10, precise_flow_options());
        if (!c.pass) bad = std::max(bad, c.worst);
      }
      return bad;
    });
    if (p) {
      const CVec pt = to_vec(p, n);
      record("energy", [&] {
        double bad = 0.0;
        const std::vector<double> times{0.5, 1.0, 2.0, 5.0};
        for (std::size_t i = 0; i < 20; ++i) {
          const FlowCheck c = energy_check(fn, pt, beta, pts[i], times, 1e-8, precise_flow_options());
          if (!c.pass) bad = std::max(bad, c.worst);
        }
        return bad;
      });
      recs.back()["point"] = vjson(pt);
      recs.back()["beta"] = beta;
    }
    *out = emit(recs, v);
  });
}

hd_status hd_boundary_scan(const hd_field* f, const hd_complex* p, const hd_options* opt, hd_report** out) {
  if (!f || !p || !out) return HD_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const hd_options o = options_or_default(opt);
    const CVec pt = to_vec(p, f->field.dim());
    const BrfpScan s = brfp_scan(f->field.as_function(), pt, o.device_count, o.seed, o.depth);
    json r = base_record("boundary-scan", f, &o);
    r["point"] = vjson(pt);
    r["depth"] = o.depth;
    r["verdict"] = brfp_verdict_name(s.verdict);
    r["beta"] = num(s.beta);
    r["rate_b"] = num(s.rate_b);
    r["devices"] = s.devices.size();
    r["worst_device"] = s.devices.empty() ? json(nullptr) : json(s.devices[s.worst_device].label);
    r["note"] = s.note;
    std::vector<json> recs{r};
    for (const auto& d : s.devices) {
      json dr;
      dr["command"] = "boundary-device";
      dr["label"] = d.label;
      dr["basepoint"] = vjson(d.basepoint);
      dr["failed"] = d.failed;
      add_slope(dr, d.slope);
      recs.push_back(dr);
    }
    *out = emit(recs, verdict_of(s.verdict));
  });
}

hd_status hd_boundary_slope(const hd_field* f, const hd_complex* p, const hd_options* opt, hd_report** out) {
  if (!f || !p || !out) return HD_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const hd_options o = options_or_default(opt);
    const int n = f->field.dim();
    const CVec pt = to_vec(p, n);
    const auto dev = geodesic_device(BallPoint(CVec::Zero(n)), BoundaryPoint(pt));
    const SlopeEstimate s = radial_slope(geodesic_generator(f->field.as_function(), dev), o.depth);
    json r = base_record("boundary-slope", f, &o);
    r["point"] = vjson(pt);
    r["depth"] = o.depth;
    add_slope(r, s);
    std::ostringstream csv;
    write_slope_csv(csv, s);
    *out = emit({r}, s.bounded && s.extrapolated ? HD_PASS : HD_FAIL, csv.str());
  });
}

hd_status hd_boundary_dilatation(const hd_field* f, const hd_complex* p, const double* times, size_t count,
                                 const hd_options* opt, hd_report** out) {
  if (!f || !p || !out || (count && !times)) return HD_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const hd_options o = options_or_default(opt);
    const int n = f->field.dim();
    const CVec pt = to_vec(p, n);
    std::vector<double> ts = count ? std::vector<double>(times, times + count) : std::vector<double>{0.25, 0.5, 1.0, 1.5};
    const auto dev = geodesic_device(BallPoint(CVec::Zero(n)), BoundaryPoint(pt));
    const DilatationFit fit = dilatation_semigroup(f->field.as_function(), ts, dev, o.depth);
    json r = base_record("boundary-dilatation", f, &o);
    r["point"] = vjson(pt);
    r["times"] = ts;
    json alphas = json::array();
    for (const auto& a : fit.alphas) alphas.push_back(a.extrapolated ? num(a.extrapolated->real()) : json(nullptr));
    r["alphas"] = alphas;
    r["beta"] = num(fit.beta);
    r["fit_residual"] = num(fit.residual);
    r["verdict"] = brfp_verdict_name(fit.verdict);
    *out = emit({r}, verdict_of(fit.verdict));
  });
}

hd_status hd_boundary_rate(const hd_field* f, const hd_complex* p, const hd_options* opt, hd_report** out) {
  if (!f || !p || !out) return HD_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const hd_options o = options_or_default(opt);
    const CVec pt = to_vec(p, f->field.dim());
    const RateEstimate e = estimate_rate(f->field.as_function(), pt, spec_of(o));
    json r = base_record("boundary-rate", f, &o);
    r["point"] = vjson(pt);
    r["b"] = num(e.b);
    r["unbounded"] = e.unbounded;
    r["caps"] = e.caps;
    json minima = json::array();
    for (double m : e.minima) minima.push_back(num(m));
    r["minima"] = minima;
    r["argmin"] = vjson(e.argmin);
    *out = emit({r}, e.unbounded ? HD_FAIL : HD_PASS);
  });
}

hd_status hd_resolvent(const hd_field* f, const hd_complex* z, double t, const hd_options* opt, hd_complex* w_out,
                       hd_report** out) {
  if (!f || !z) return HD_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const hd_options o = options_or_default(opt);
    const CVec zv = to_vec(z, f->field.dim());
    const ResolventPoint p = resolvent_point(f->field, zv, t);
    if (w_out)
      for (Eigen::Index i = 0; i < p.w.size(); ++i) w_out[i] = {p.w(i).real(), p.w(i).imag()};
    json r = base_record("resolvent", f, &o);
    r["z"] = vjson(zv);
    r["t"] = t;
    r["w"] = vjson(p.w);
    r["residual"] = num(p.residual);
    r["newton_iterations"] = p.newton_iterations;
    r["continuation_steps"] = p.continuation_steps;
    set_out(out, emit({r}, HD_PASS));
  });
}

hd_status hd_scenario_list(hd_report** out) {
  if (!out) return HD_ERR_NULL_ARGUMENT;
  return guarded([&] {
    std::vector<json> recs;
    for (const auto& s : list_scenarios()) {
      json r;
      r["command"] = "scenario-list";
      r["catalog_version"] = catalog_version();
      r["name"] = s.name;
      r["dim"] = s.dim;
      r["field"] = s.quadratic ? s.field().to_string() : s.field_text;
      if (s.conjugate_beta) r["conjugate_beta"] = *s.conjugate_beta;
      r["generator"] = s.generator;
      r["expectations"] = s.expectations.size();
      r["description"] = s.description;
      recs.push_back(r);
    }
    *out = emit(recs, HD_PASS);
  });
}

namespace {

hd_report* scenario_report(const Scenario& s, const hd_options& o) {
  ScenarioOptions so;
  so.depth = o.depth;
  so.seed = o.seed;
  so.samples = o.samples;
  so.tolerance = o.tolerance;
  const ScenarioReport rep = run_scenario(s, so);
  std::vector<json> recs;
  std::size_t passed = 0;
  for (const auto& row : rep.rows) {
    json r;
    r["command"] = "scenario-row";
    r["scenario"] = rep.name;
    r["id"] = row.id;
    r["kind"] = row.kind;
    r["origin"] = row.origin;
    r["expected"] = row.expected;
    r["actual"] = row.actual;
    r["tolerance"] = row.tolerance;
    r["pass"] = row.pass;
    r["detail"] = row.detail;
    recs.push_back(r);
    passed += row.pass ? 1 : 0;
  }
  json summary;
  summary["command"] = "scenario";
  summary["scenario"] = rep.name;
  summary["seed"] = o.seed;
  summary["samples"] = o.samples;
  summary["tolerance"] = o.tolerance;
  summary["rows"] = rep.rows.size();
  summary["passed"] = passed;
  summary["verdict"] = rep.pass() ? "pass" : "fail";
  recs.push_back(summary);
  return emit(recs, rep.pass() ? HD_PASS : HD_FAIL);
}

}  // namespace

hd_status hd_scenario_run(const char* name, const hd_options* opt, hd_report** out) {
  if (!name || !out) return HD_ERR_NULL_ARGUMENT;
  return guarded([&] { *out = scenario_report(resolve_scenario(name), options_or_default(opt)); });
}

hd_status hd_scenario_run_file(const char* path, const hd_options* opt, hd_report** out) {
  if (!path || !out) return HD_ERR_NULL_ARGUMENT;
  return guarded([&] { *out = scenario_report(load_scenario_file(path), options_or_default(opt)); });
}

}  // extern "C"
