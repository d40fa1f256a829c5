#pragma once

#include <json.hpp>
#include <string>
#include <variant>
#include <vector>

#include "modelmult/errors.hpp"

namespace modelmult {

inline constexpr const char* kSchemaVersion = "v1";
inline constexpr const char* kToolVersion = "1.0.0";

// Envelope shared by every CLI report. Keys are emitted in sorted order, so
// identical inputs give identical bytes.
struct Report {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  nlohmann::json tolerances = nlohmann::json::object();
  nlohmann::json grids = nlohmann::json::object();
  nlohmann::json result = nlohmann::json::object();

  nlohmann::json to_json() const;
};

// Pretty JSON with a trailing newline; non-finite numbers become null.
std::string dump_json(const nlohmann::json& j);

nlohmann::json error_json(const Error& e);
nlohmann::json error_json(const std::string& kind, const std::string& message);

// %.17g
std::string format_double(double x);

using CsvCell = std::variant<double, long long, std::string>;

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<CsvCell>> rows;

  void add_row(std::vector<CsvCell> row);
  bool empty() const noexcept { return rows.empty(); }
  // Comma separated, header row first, LF line endings.
  std::string str() const;
};

}  // namespace modelmult
