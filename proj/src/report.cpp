#include "modelmult/report.hpp"

#include <cmath>
#include <cstdio>

namespace modelmult {

using nlohmann::json;

json Report::to_json() const {
  return {{"schema", std::string("modelmult/") + kSchemaVersion + "/" + command},
          {"tool_version", kToolVersion},
          {"command", command},
          {"config", config},
          {"tolerances", tolerances},
          {"grids", grids},
          {"result", result}};
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

json error_json(const Error& e) {
  json j = error_json(e.kind(), e.what());
  if (const auto* d = dynamic_cast<const DescriptorError*>(&e)) {
    j["error"]["pointer"] = d->pointer().empty() ? "/" : d->pointer();
  } else if (const auto* p = dynamic_cast<const PartialResultError*>(&e)) {
    j["error"]["partial_value"] = {p->value_real(), p->value_imag()};
    j["error"]["achieved_bound"] = p->achieved_bound();
  } else if (const auto* c = dynamic_cast<const IllConditionedError*>(&e)) {
    j["error"]["condition_number"] = c->condition_number();
  }
  return j;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void CsvTable::add_row(std::vector<CsvCell> row) {
  if (row.size() != header.size()) throw DataError("CSV row width does not match the header");
  rows.push_back(std::move(row));
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += quote(header[i]);
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              out += format_double(v);
            } else if constexpr (std::is_same_v<T, long long>) {
              out += std::to_string(v);
            } else {
              out += quote(v);
            }
          },
          row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace modelmult
