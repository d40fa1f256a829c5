#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "modelmult/polynomial.hpp"

namespace modelmult {

/// Parses "0.3", "-0.2i", "0.3+0.2i", "1e-3-4e-2j". Throws DescriptorError.
cplx parse_complex(const std::string& text, const std::string& pointer = "");
/// Comma-separated list of complex numbers; the empty string gives [].
std::vector<cplx> parse_complex_list(const std::string& text, const std::string& pointer = "");

/// [re, im]
nlohmann::json complex_to_json(cplx z);
nlohmann::json complex_list_to_json(const std::vector<cplx>& zs);
/// Accepts [re, im], a bare number, or a string understood by parse_complex.
cplx complex_from_json(const nlohmann::json& j, const std::string& pointer);
std::vector<cplx> complex_list_from_json(const nlohmann::json& j, const std::string& pointer);

/// Checked accessors that raise DescriptorError carrying the JSON pointer.
const nlohmann::json& require(const nlohmann::json& obj, const std::string& key,
                              const std::string& pointer);
double require_number(const nlohmann::json& j, const std::string& pointer);
int require_int(const nlohmann::json& j, const std::string& pointer);

}  // namespace modelmult
