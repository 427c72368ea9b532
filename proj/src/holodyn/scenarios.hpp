#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "holodyn/vector_field.hpp"

namespace holodyn {

/// One expected outcome. `origin` says where the expected value comes from:
/// "reference" for a worked example of the theory, "closed_form" for an
/// independent formula, "identity" for an algebraic triviality.
struct Expectation {
  std::string id;
  std::string kind;
  std::string origin;
  nlohmann::json params;
};

struct QuadraticParams {
  CVec a;
  CMat A;
  CVec b;
};

struct Scenario {
  std::string name;
  std::string description;
  int dim = 1;
  bool generator = true;  // false for deliberate non-generators
  std::string field_text;                 // empty when built from `quadratic`
  std::optional<double> conjugate_beta;   // conjugate by the parabolic automorphism with this beta
  std::optional<QuadraticParams> quadratic;
  std::map<std::string, CVec> points;
  std::vector<CVec> interior_zeros;
  std::vector<Expectation> expectations;

  VectorField field() const;
  /// Named point, literal e<k>, or "origin".
  CVec point(const std::string& name) const;
};

std::string catalog_version();
const std::vector<Scenario>& list_scenarios();
const Scenario& find_scenario(std::string_view name);

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);
Scenario load_scenario_file(const std::string& path);

struct ScenarioOptions {
  int depth = 13;
  std::uint64_t seed = 1;
  std::uint64_t samples = 1000;
  double tolerance = 1e-9;
};

struct ScenarioRow {
  std::string id;
  std::string kind;
  std::string origin;
  std::string expected;
  std::string actual;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct ScenarioReport {
  std::string name;
  std::vector<ScenarioRow> rows;
  bool pass() const;
};

ScenarioReport run_scenario(const Scenario& s, const ScenarioOptions& opt = {});
ScenarioReport run_scenario(std::string_view name, const ScenarioOptions& opt = {});

/// Complex numbers in scenario files are plain numbers or [re, im] pairs.
Complex complex_from_json(const nlohmann::json& j);
CVec vector_from_json(const nlohmann::json& j);
nlohmann::json complex_to_json(Complex c);
nlohmann::json vector_to_json(const CVec& v);

}  // namespace holodyn
