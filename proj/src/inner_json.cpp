#include <charconv>
#include <cmath>

#include "modelmult/errors.hpp"
#include "modelmult/inner.hpp"
#include "modelmult/json_io.hpp"

namespace modelmult {

using nlohmann::json;

namespace {

double parse_real(const std::string& s, const std::string& whole, const std::string& pointer) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  const char* first = s.data();
  if (*first == '+') ++first;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw DescriptorError("cannot parse complex number '" + whole + "'", pointer);
  }
  return v;
}

}  // namespace

cplx parse_complex(const std::string& text, const std::string& pointer) {
  std::string s;
  for (const char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw DescriptorError("empty complex number", pointer);
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text, pointer), 0.0};
  s.pop_back();
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, parse_real(s, text, pointer)};
  return {parse_real(s.substr(0, split), text, pointer),
          parse_real(s.substr(split), text, pointer)};
}

std::vector<cplx> parse_complex_list(const std::string& text, const std::string& pointer) {
  std::vector<cplx> out;
  std::size_t pos = 0;
  bool blank = true;
  for (const char c : text) blank = blank && std::isspace(static_cast<unsigned char>(c));
  if (blank) return out;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    out.push_back(parse_complex(item, pointer + "/" + std::to_string(out.size())));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json complex_list_to_json(const std::vector<cplx>& zs) {
  json a = json::array();
  for (const cplx z : zs) a.push_back(complex_to_json(z));
  return a;
}

cplx complex_from_json(const json& j, const std::string& pointer) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_string()) return parse_complex(j.get<std::string>(), pointer);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw DescriptorError("expected a complex number as [re, im], a number or a string", pointer);
}

std::vector<cplx> complex_list_from_json(const json& j, const std::string& pointer) {
  if (!j.is_array()) throw DescriptorError("expected an array of complex numbers", pointer);
  std::vector<cplx> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(complex_from_json(j[i], pointer + "/" + std::to_string(i)));
  }
  return out;
}

const json& require(const json& obj, const std::string& key, const std::string& pointer) {
  if (!obj.is_object()) throw DescriptorError("expected an object", pointer);
  const auto it = obj.find(key);
  if (it == obj.end()) throw DescriptorError("missing required field '" + key + "'", pointer);
  return *it;
}

double require_number(const json& j, const std::string& pointer) {
  if (!j.is_number()) throw DescriptorError("expected a number", pointer);
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw DescriptorError("expected a finite number", pointer);
  return v;
}

int require_int(const json& j, const std::string& pointer) {
  if (!j.is_number_integer()) throw DescriptorError("expected an integer", pointer);
  return j.get<int>();
}

// ---- InnerFunction descriptors ----------------------------------------------

json InnerFunction::to_json() const {
  switch (kind()) {
    case Kind::FiniteBlaschke:
      return {{"type", "finite_blaschke"}, {"zeros", complex_list_to_json(as_finite().zeros)}};
    case Kind::InfiniteBlaschke: {
      const ZeroRule& r = as_infinite().rule;
      json rule = {{"point_turns", r.point_turns}, {"scale", r.scale}, {"start", r.start}};
      if (r.kind == ZeroRule::Kind::Geometric) {
        rule["kind"] = "geometric";
        rule["ratio"] = r.ratio;
      } else {
        rule["kind"] = "power";
        rule["exponent"] = r.exponent;
      }
      return {{"type", "infinite_blaschke"}, {"rule", rule}};
    }
    case Kind::AtomicSingular: {
      json atoms = json::array();
      for (const Atom& a : as_atomic().atoms) {
        atoms.push_back({{"angle_turns", a.angle_turns}, {"weight", a.weight}});
      }
      return {{"type", "atomic_singular"}, {"atoms", atoms}};
    }
    case Kind::Product:
      return {{"type", "product"},
              {"factors", json::array({as_product().left.to_json(), as_product().right.to_json()})}};
    case Kind::FrostmanShift:
      return {{"type", "frostman_shift"},
              {"base", as_frostman().base.to_json()},
              {"a", complex_to_json(as_frostman().a)}};
  }
  return json();
}

namespace {

InnerFunction parse_inner(const json& j, const std::string& ptr) {
  const json& type = require(j, "type", ptr);
  if (!type.is_string()) throw DescriptorError("'type' must be a string", ptr + "/type");
  const std::string t = type.get<std::string>();
  try {
    if (t == "finite_blaschke") {
      const auto zeros = complex_list_from_json(require(j, "zeros", ptr), ptr + "/zeros");
      for (std::size_t i = 0; i < zeros.size(); ++i) {
        if (!(std::abs(zeros[i]) < 1.0)) {
          throw DescriptorError("Blaschke zero outside the open unit disk", ptr + "/zeros/" + std::to_string(i));
        }
      }
      return InnerFunction::finite_blaschke(zeros);
    }
    if (t == "infinite_blaschke") {
      const std::string rp = ptr + "/rule";
      const json& r = require(j, "rule", ptr);
      ZeroRule rule;
      const std::string kind = r.value("kind", std::string("geometric"));
      if (kind == "geometric") {
        rule.kind = ZeroRule::Kind::Geometric;
        if (r.contains("ratio")) rule.ratio = require_number(r["ratio"], rp + "/ratio");
      } else if (kind == "power") {
        rule.kind = ZeroRule::Kind::Power;
        if (r.contains("exponent")) rule.exponent = require_number(r["exponent"], rp + "/exponent");
      } else {
        throw DescriptorError("unknown zero rule kind '" + kind + "'", rp + "/kind");
      }
      if (r.contains("point_turns")) rule.point_turns = require_number(r["point_turns"], rp + "/point_turns");
      if (r.contains("scale")) rule.scale = require_number(r["scale"], rp + "/scale");
      if (r.contains("start")) rule.start = require_int(r["start"], rp + "/start");
      return InnerFunction::infinite_blaschke(rule);
    }
    if (t == "atomic_singular") {
      const json& atoms = require(j, "atoms", ptr);
      if (!atoms.is_array()) throw DescriptorError("'atoms' must be an array", ptr + "/atoms");
      std::vector<Atom> out;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        const std::string ap = ptr + "/atoms/" + std::to_string(i);
        Atom a;
        a.angle_turns = require_number(require(atoms[i], "angle_turns", ap), ap + "/angle_turns");
        a.weight = require_number(require(atoms[i], "weight", ap), ap + "/weight");
        out.push_back(a);
      }
      return InnerFunction::atomic_singular(out);
    }
    if (t == "product") {
      const json& fs = require(j, "factors", ptr);
      if (!fs.is_array()) throw DescriptorError("'factors' must be an array", ptr + "/factors");
      std::vector<InnerFunction> factors;
      for (std::size_t i = 0; i < fs.size(); ++i) {
        factors.push_back(parse_inner(fs[i], ptr + "/factors/" + std::to_string(i)));
      }
      return InnerFunction::product(factors);
    }
    if (t == "frostman_shift") {
      const InnerFunction base = parse_inner(require(j, "base", ptr), ptr + "/base");
      return frostman_shift(base, complex_from_json(require(j, "a", ptr), ptr + "/a"));
    }
  } catch (const DomainError& e) {
    throw DescriptorError(e.what(), ptr);
  }
  throw DescriptorError("unknown inner function type '" + t + "'", ptr + "/type");
}

}  // namespace

InnerFunction InnerFunction::from_json(const json& j) { return parse_inner(j, ""); }

json to_json(const BoundarySpectrumEstimate& s) {
  json arcs = json::array();
  for (const Arc& a : s.arcs) arcs.push_back({{"start_turns", a.start_turns}, {"end_turns", a.end_turns}});
  return {{"arcs", arcs}, {"is_exact", s.is_exact}};
}

json to_json(const SublevelReport& r) {
  json j = {{"contained", r.contained},
            {"eps_u", r.eps_u},
            {"eps_v", r.eps_v},
            {"points_checked", r.points_checked},
            {"points_in_v_sublevel", r.points_in_v_sublevel},
            {"witness_count", r.witness_count},
            {"skipped", r.skipped},
            {"grid", r.grid},
            {"certification", "finite grid check only"}};
  if (r.witness) {
    j["witness"] = {{"point", complex_to_json(*r.witness)},
                    {"abs_u", r.witness_abs_u},
                    {"abs_v", r.witness_abs_v}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

}  // namespace modelmult
