#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "modelmult/report.hpp"

namespace modelmult {

struct CriterionResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string comparison;  // how value is compared with threshold, e.g. ">=" or "<"
  std::string note;
};

struct FixtureResult {
  std::string name;
  std::vector<CriterionResult> criteria;
  nlohmann::json tolerances = nlohmann::json::object();
  nlohmann::json grids = nlohmann::json::object();
  nlohmann::json data = nlohmann::json::object();
  CsvTable table;

  bool passed() const;
  nlohmann::json to_json() const;
};

// Frozen names: example-3.5, spectrum-disjoint, u-alpha-sublevel, clark-exp,
// e-delta, e1-e2-ac.
const std::vector<std::string>& fixture_names();

// DomainError for an unknown name.
FixtureResult run_fixture(const std::string& name);

}  // namespace modelmult
