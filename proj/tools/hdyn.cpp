#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "holodyn/holodyn.h"

using nlohmann::json;

namespace {

constexpr int kExitInput = 3;
constexpr int kExitInconclusive = 2;

struct Config {
  std::string field;
  std::string scenario;
  int dim = 0;
  uint64_t seed = 1;
  uint64_t samples = 1000;
  double tol = 1e-9;
  int depth = 13;
  std::string format = "table";
  std::string out;
  std::string point;
  std::optional<double> beta;
  std::string z = "0";
  double t = 1.0;
  double tmax = 1.0;
  std::string method = "all";
  std::string times;
  bool check = false;
  std::string action;
  std::string name;
};

/// Raised for a failed C API call; carries the exit code.
struct Failure {
  int code;
};

bool input_error(hd_status s) {
  switch (s) {
    case HD_ERR_PARSE:
    case HD_ERR_HOLOMORPHY:
    case HD_ERR_UNKNOWN_IDENTIFIER:
    case HD_ERR_INVALID_ARGUMENT:
    case HD_ERR_UNKNOWN_SCENARIO:
    case HD_ERR_UNSUPPORTED_DIMENSION:
    case HD_ERR_DOMAIN:
    case HD_ERR_NULL_ARGUMENT:
      return true;
    default:
      return false;
  }
}

void check(hd_status s, const std::string& source = {}) {
  if (s == HD_OK) return;
  std::cerr << "error: " << hd_status_name(s) << ": " << hd_last_error() << "\n";
  const long pos = hd_last_error_position();
  if (pos >= 0 && !source.empty()) std::cerr << "  " << source << "\n  " << std::string(static_cast<std::size_t>(pos), ' ') << "^\n";
  throw Failure{input_error(s) ? kExitInput : kExitInconclusive};
}

using FieldPtr = std::unique_ptr<hd_field, decltype(&hd_field_free)>;
using ReportPtr = std::unique_ptr<hd_report, decltype(&hd_report_free)>;

// Number of top-level components of "(a, b, ...)", or 1.
int infer_dim(const std::string& text) {
  const auto b = text.find_first_not_of(" \t");
  if (b == std::string::npos || text[b] != '(') return 1;
  int depth = 0, commas = 0;
  for (std::size_t i = b; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(') ++depth;
    if (c == ')' && --depth == 0) {
      const auto rest = text.find_first_not_of(" \t", i + 1);
      return rest == std::string::npos ? commas + 1 : 1;
    }
    if (c == ',' && depth == 1) ++commas;
  }
  return commas + 1;
}

FieldPtr load_field(const Config& c) {
  hd_field* f = nullptr;
  if (!c.field.empty() && !c.scenario.empty()) {
    std::cerr << "error: give either --field or --scenario, not both\n";
    throw Failure{kExitInput};
  }
  if (!c.scenario.empty()) {
    check(hd_field_from_scenario(c.scenario.c_str(), &f));
  } else if (!c.field.empty()) {
    check(hd_field_parse(c.field.c_str(), c.dim > 0 ? c.dim : infer_dim(c.field), &f), c.field);
  } else {
    std::cerr << "error: a field is required (--field or --scenario)\n";
    throw Failure{kExitInput};
  }
  if (c.dim > 0 && hd_field_dim(f) != c.dim) {
    hd_field_free(f);
    std::cerr << "error: --dim does not match the scenario dimension\n";
    throw Failure{kExitInput};
  }
  return FieldPtr(f, hd_field_free);
}

std::vector<hd_complex> load_point(const Config& c, const std::string& text, int dim) {
  std::vector<hd_complex> p(static_cast<std::size_t>(dim));
  check(hd_parse_point(c.scenario.empty() ? nullptr : c.scenario.c_str(), text.c_str(), dim, p.data()), text);
  return p;
}

hd_options options(const Config& c) {
  hd_options o;
  hd_options_default(&o);
  o.seed = c.seed;
  o.samples = c.samples;
  o.tolerance = c.tol;
  o.depth = c.depth;
  return o;
}

std::string fmt_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

bool is_complex(const json& j) { return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(); }

std::string pretty(const json& j) {
  if (j.is_number()) return fmt_number(j.get<double>());
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
  if (j.is_null()) return "-";
  if (is_complex(j)) {
    const double re = j[0].get<double>(), im = j[1].get<double>();
    if (im == 0.0) return fmt_number(re);
    return fmt_number(re) + (im < 0 ? "-" : "+") + fmt_number(std::abs(im)) + "i";
  }
  if (j.is_array() && !j.empty() && is_complex(j[0])) {
    std::string s = "(";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + pretty(j[i]);
    return s + ")";
  }
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + pretty(j[i]);
    return s + "]";
  }
  return j.dump();
}

std::string clip(std::string s, std::size_t width) {
  if (s.size() > width) s = s.substr(0, width - 3) + "...";
  return s;
}

// Identifying keys first, the rest alphabetically.
std::vector<std::string> ordered_keys(const json& r) {
  static const std::vector<std::string> lead{"command", "scenario", "id", "name", "method", "check", "label",
                                             "kind", "verdict", "pass", "expected", "actual"};
  std::vector<std::string> keys;
  for (const auto& k : lead)
    if (r.contains(k)) keys.push_back(k);
  for (const auto& [k, v] : r.items())
    if (std::find(lead.begin(), lead.end(), k) == lead.end()) keys.push_back(k);
  return keys;
}

void print_table(std::ostream& os, const std::vector<json>& recs) {
  std::size_t i = 0;
  while (i < recs.size()) {
    std::size_t j = i;
    const std::string cmd = recs[i].value("command", "");
    while (j < recs.size() && recs[j].value("command", "") == cmd) ++j;
    if (j - i == 1) {
      std::size_t w = 0;
      const auto keys = ordered_keys(recs[i]);
      for (const auto& k : keys) w = std::max(w, k.size());
      for (const auto& k : keys) os << std::left << std::setw(static_cast<int>(w)) << k << "  " << pretty(recs[i][k]) << "\n";
    } else {
      std::vector<std::string> cols;
      for (const auto& k : ordered_keys(recs[i]))
        if (k != "command") cols.push_back(k);
      std::vector<std::size_t> width;
      for (const auto& c : cols) {
        std::size_t w = c.size();
        for (std::size_t r = i; r < j; ++r) w = std::max(w, clip(pretty(recs[r].value(c, json())), 48).size());
        width.push_back(w);
      }
      for (std::size_t k = 0; k < cols.size(); ++k) os << std::left << std::setw(static_cast<int>(width[k] + 2)) << cols[k];
      os << "\n";
      for (std::size_t r = i; r < j; ++r) {
        for (std::size_t k = 0; k < cols.size(); ++k)
          os << std::left << std::setw(static_cast<int>(width[k] + 2)) << clip(pretty(recs[r].value(cols[k], json())), 48);
        os << "\n";
      }
    }
    if (j < recs.size()) os << "\n";
    i = j;
  }
}

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.is_null() ? "" : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void print_csv(std::ostream& os, const std::vector<json>& recs) {
  std::vector<std::string> cols;
  std::set<std::string> seen;
  for (const auto& r : recs)
    for (const auto& k : ordered_keys(r))
      if (seen.insert(k).second) cols.push_back(k);
  for (std::size_t k = 0; k < cols.size(); ++k) os << (k ? "," : "") << cols[k];
  os << "\n";
  for (const auto& r : recs) {
    for (std::size_t k = 0; k < cols.size(); ++k) os << (k ? "," : "") << csv_cell(r.value(cols[k], json()));
    os << "\n";
  }
}

int emit(const Config& c, hd_report* raw) {
  ReportPtr rep(raw, hd_report_free);
  std::vector<json> recs;
  for (std::size_t i = 0; i < hd_report_record_count(rep.get()); ++i) recs.push_back(json::parse(hd_report_record(rep.get(), i)));
  std::ofstream file;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) {
      std::cerr << "error: cannot write " << c.out << "\n";
      return kExitInput;
    }
  }
  std::ostream& os = c.out.empty() ? std::cout : file;
  if (c.format == "jsonl") {
    for (std::size_t i = 0; i < hd_report_record_count(rep.get()); ++i) os << hd_report_record(rep.get(), i) << "\n";
  } else if (c.format == "csv") {
    const std::string data = hd_report_csv(rep.get());
    if (!data.empty())
      os << data;
    else
      print_csv(os, recs);
  } else {
    print_table(os, recs);
  }
  return static_cast<int>(hd_report_verdict(rep.get()));
}

int cmd_certify(const Config& c) {
  const FieldPtr f = load_field(c);
  const hd_options o = options(c);
  hd_report* r = nullptr;
  const int dim = hd_field_dim(f.get());
  if (c.method == "stationary" || c.method == "brfp-rate") {
    if (c.point.empty()) {
      std::cerr << "error: --point is required for --method " << c.method << "\n";
      return kExitInput;
    }
    const auto p = load_point(c, c.point, dim);
    if (c.method == "stationary")
      check(hd_certify_stationary(f.get(), p.data(), &o, &r));
    else
      check(hd_certify_brfp_rate(f.get(), p.data(), c.beta.value_or(0.0), &o, &r));
    return emit(c, r);
  }
  static const std::map<std::string, hd_cert_method> methods{{"green", HD_CERT_GREEN}, {"ball", HD_CERT_BALL},
                                                             {"shift", HD_CERT_SHIFT}, {"group", HD_CERT_GROUP},
                                                             {"all", HD_CERT_ALL},     {"quadratic", HD_CERT_QUADRATIC}};
  check(hd_certify(f.get(), methods.at(c.method), &o, &r));
  return emit(c, r);
}

int cmd_flow(const Config& c) {
  const FieldPtr f = load_field(c);
  const hd_options o = options(c);
  const int dim = hd_field_dim(f.get());
  hd_report* r = nullptr;
  if (c.check) {
    std::vector<hd_complex> p;
    if (!c.point.empty()) p = load_point(c, c.point, dim);
    check(hd_flow_invariants(f.get(), p.empty() ? nullptr : p.data(), c.beta.value_or(0.0), &o, &r));
    return emit(c, r);
  }
  const auto z = load_point(c, c.z, dim);
  check(hd_flow(f.get(), z.data(), c.tmax, &o, &r));
  return emit(c, r);
}

int cmd_boundary(const Config& c) {
  const FieldPtr f = load_field(c);
  const hd_options o = options(c);
  if (c.point.empty()) {
    std::cerr << "error: --point is required\n";
    return kExitInput;
  }
  const auto p = load_point(c, c.point, hd_field_dim(f.get()));
  hd_report* r = nullptr;
  if (c.action == "scan") {
    check(hd_boundary_scan(f.get(), p.data(), &o, &r));
  } else if (c.action == "slope") {
    check(hd_boundary_slope(f.get(), p.data(), &o, &r));
  } else if (c.action == "rate") {
    check(hd_boundary_rate(f.get(), p.data(), &o, &r));
  } else {
    std::vector<double> ts;
    std::stringstream ss(c.times);
    for (std::string tok; std::getline(ss, tok, ',');) {
      try {
        ts.push_back(std::stod(tok));
      } catch (const std::exception&) {
        std::cerr << "error: bad time value '" << tok << "'\n";
        return kExitInput;
      }
    }
    check(hd_boundary_dilatation(f.get(), p.data(), ts.data(), ts.size(), &o, &r));
  }
  return emit(c, r);
}

int cmd_resolvent(const Config& c) {
  const FieldPtr f = load_field(c);
  const hd_options o = options(c);
  const auto z = load_point(c, c.z, hd_field_dim(f.get()));
  hd_report* r = nullptr;
  check(hd_resolvent(f.get(), z.data(), c.t, &o, nullptr, &r));
  return emit(c, r);
}

int cmd_scenario(const Config& c) {
  hd_report* r = nullptr;
  if (c.action == "list") {
    check(hd_scenario_list(&r));
    return emit(c, r);
  }
  if (c.name.empty()) {
    std::cerr << "error: scenario run needs a name, a .json file or 'all'\n";
    return kExitInput;
  }
  const hd_options o = options(c);
  if (c.name != "all") {
    check(hd_scenario_run(c.name.c_str(), &o, &r));
    return emit(c, r);
  }
  hd_report* list = nullptr;
  check(hd_scenario_list(&list));
  ReportPtr keep(list, hd_report_free);
  int worst = 0;
  for (std::size_t i = 0; i < hd_report_record_count(list); ++i) {
    const std::string name = json::parse(hd_report_record(list, i)).at("name");
    check(hd_scenario_run(name.c_str(), &o, &r));
    Config each = c;
    if (!c.out.empty() && i > 0) each.out.clear();  // later scenarios go to stdout
    worst = std::max(worst, emit(each, r));
  }
  return worst;
}

void common(CLI::App* sub, Config& c) {
  sub->add_option("--field", c.field, "Vector field, e.g. \"(-z1, -z2)\"");
  sub->add_option("--scenario", c.scenario, "Catalog scenario name or scenario .json file");
  sub->add_option("--dim", c.dim, "Dimension (inferred from --field when omitted)")->check(CLI::Range(1, 64));
  sub->add_option("--seed", c.seed, "Sampling seed");
  sub->add_option("--samples", c.samples, "Sample count")->check(CLI::PositiveNumber);
  sub->add_option("--tol", c.tol, "Margin tolerance")->check(CLI::NonNegativeNumber);
  sub->add_option("--depth", c.depth, "Dyadic depth of boundary limits")->check(CLI::Range(5, 40));
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"table", "csv", "jsonl"}));
  sub->add_option("--out", c.out, "Write output to this file");
  sub->add_option("--point", c.point, "Boundary point, e.g. e1 or \"(0, 1)\"");
  sub->add_option("--beta", c.beta, "Rate beta");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semigroups of holomorphic self-maps of the unit ball"};
  app.require_subcommand(1);
  app.set_version_flag("--version", hd_version());
  Config c;

  auto* certify = app.add_subcommand("certify", "Certify that a field generates a semigroup");
  common(certify, c);
  certify->add_option("--method", c.method, "Certificate")
      ->check(CLI::IsMember({"green", "ball", "shift", "group", "all", "quadratic", "stationary", "brfp-rate"}));

  auto* flow = app.add_subcommand("flow", "Integrate the semigroup flow");
  common(flow, c);
  flow->add_option("--z", c.z, "Initial point");
  flow->add_option("--tmax", c.tmax, "Final time")->check(CLI::NonNegativeNumber);
  flow->add_flag("--check", c.check, "Run semigroup, Kobayashi and (with --point) energy checks");

  auto* boundary = app.add_subcommand("boundary", "Boundary regular fixed point analysis");
  common(boundary, c);
  boundary->add_option("action", c.action, "scan, slope, dilatation or rate")
      ->required()
      ->check(CLI::IsMember({"scan", "slope", "dilatation", "rate"}));
  boundary->add_option("--times", c.times, "Comma-separated times for dilatation");

  auto* resolvent = app.add_subcommand("resolvent", "Nonlinear resolvent G_t(z)");
  common(resolvent, c);
  resolvent->add_option("--z", c.z, "Point");
  resolvent->add_option("--t", c.t, "Resolvent parameter")->check(CLI::NonNegativeNumber);

  auto* scenario = app.add_subcommand("scenario", "List or run catalog scenarios");
  common(scenario, c);
  scenario->add_option("action", c.action, "list or run")->required()->check(CLI::IsMember({"list", "run"}));
  scenario->add_option("name", c.name, "Scenario name, scenario file, or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (certify->parsed()) return cmd_certify(c);
    if (flow->parsed()) return cmd_flow(c);
    if (boundary->parsed()) return cmd_boundary(c);
    if (resolvent->parsed()) return cmd_resolvent(c);
    return cmd_scenario(c);
  } catch (const Failure& f) {
    return f.code;
  }
}
