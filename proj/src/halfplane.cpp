#include "modelmult/halfplane.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "modelmult/errors.hpp"
#include "modelmult/json_io.hpp"
#include "modelmult/modelspace.hpp"
#include "modelmult/parallel.hpp"

namespace modelmult {

using nlohmann::json;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr long kMaxFactors = 5'000'000;
const cplx kI(0.0, 1.0);

}  // namespace

cplx cayley(cplx z) {
  if (std::abs(z + kI) == 0.0) throw DomainError("Cayley map has a pole at z = -i");
  if (z.imag() < 0.0) throw DomainError("Cayley map expects Im z >= 0");
  return (z - kI) / (z + kI);
}

cplx cayley_inverse(cplx w) {
  if (std::abs(1.0 - w) == 0.0) throw DomainError("inverse Cayley map has a pole at w = 1");
  if (std::abs(w) > 1.0 + 1e-12) throw DomainError("inverse Cayley map expects |w| <= 1");
  return kI * (1.0 + w) / (1.0 - w);
}

HalfPlaneFunction transfer(const std::function<cplx(cplx)>& f) {
  const double s = std::sqrt(kPi);
  return [f, s](cplx z) { return f(cayley(z)) / (s * (z + kI)); };
}

HalfPlaneFunction compose_cayley(const std::function<cplx(cplx)>& phi) {
  return [phi](cplx z) { return phi(cayley(z)); };
}

// ---- line quadrature --------------------------------------------------------

LineIntegral line_inner(const HalfPlaneFunction& f, const HalfPlaneFunction& g, double tail_target) {
  using boost::math::quadrature::gauss_kronrod;
  auto integrand = [&](double x) { return f(cplx(x, 0.0)) * std::conj(g(cplx(x, 0.0))); };
  int levels = 4;
  double tail = kInf;
  for (; levels <= 60; ++levels) {
    const double t = std::ldexp(1.0, levels);
    const double l = (1.0 + t * t) * (std::abs(integrand(t)) + std::abs(integrand(-t)));
    tail = l * (kPi / 2.0 - std::atan(t));
    if (tail < tail_target) break;
  }
  if (levels > 60) throw EvaluationError("line integrand does not decay like 1/x^2");
  LineIntegral out;
  out.truncation = std::ldexp(1.0, levels);
  out.tail_bound = 2.0 * tail;
  std::vector<std::pair<double, double>> panels{{-1.0, 1.0}};
  for (int j = 0; j < levels; ++j) {
    const double a = std::ldexp(1.0, j), b = std::ldexp(1.0, j + 1);
    panels.emplace_back(a, b);
    panels.emplace_back(-b, -a);
  }
  cplx acc{};
  for (const auto& [a, b] : panels) {
    double err_re = 0.0, err_im = 0.0;
    const double re = gauss_kronrod<double, 61>::integrate(
        [&](double x) { return integrand(x).real(); }, a, b, 20, 1e-13, &err_re);
    const double im = gauss_kronrod<double, 61>::integrate(
        [&](double x) { return integrand(x).imag(); }, a, b, 20, 1e-13, &err_im);
    acc += cplx(re, im);
    out.quadrature_error += std::abs(err_re) * (b - a) + std::abs(err_im) * (b - a);
  }
  out.value = acc;
  return out;
}

// ---- canonical products -----------------------------------------------------

CanonicalProduct CanonicalProduct::e_delta(double delta) {
  if (!(delta > 0.0 && delta < 0.25)) throw DomainError("E_delta needs delta in (0, 1/4)");
  return {Variant::EDelta, delta};
}

CanonicalProduct CanonicalProduct::from_name(const std::string& name, double delta) {
  if (name == "E_delta" || name == "e-delta" || name == "e_delta") return e_delta(delta);
  if (name == "E_quarter" || name == "e-quarter" || name == "e_quarter") return e_quarter();
  if (name == "E1" || name == "e1") return e1();
  if (name == "E2" || name == "e2") return e2();
  if (name == "E2_tilde" || name == "e2-tilde" || name == "e2_tilde") return e2_tilde();
  throw DomainError("unknown canonical product '" + name + "'");
}

std::string CanonicalProduct::name() const {
  switch (variant) {
    case Variant::EDelta: return "E_delta";
    case Variant::EQuarter: return "E_quarter";
    case Variant::E1: return "E1";
    case Variant::E2: return "E2";
    case Variant::E2Tilde: return "E2_tilde";
  }
  return "unknown";
}

namespace {

struct PairRule {
  double shift;  // a_k = k + shift - i eps(k)
  double delta;  // eps(k) = k^{-4 delta}; 0 means eps = 1
  double eps(double k) const { return delta > 0.0 ? std::pow(k, -4.0 * delta) : 1.0; }
};

PairRule pair_rule(const CanonicalProduct& e) {
  if (e.variant == CanonicalProduct::Variant::EDelta) return {-e.delta, e.delta};
  return {0.25, 0.0};
}

cplx dyadic_zero(const CanonicalProduct& e, int n) {
  if (e.variant == CanonicalProduct::Variant::E1) return cplx(0.0, -std::ldexp(1.0, n));
  return cplx(std::ldexp(1.0, n), -std::ldexp(1.0, -2 * n));
}

}  // namespace

std::vector<cplx> CanonicalProduct::zeros(int count) const {
  std::vector<cplx> out;
  switch (variant) {
    case Variant::EDelta:
    case Variant::EQuarter: {
      const PairRule r = pair_rule(*this);
      out.push_back(-kI);
      for (int k = 1; k <= count; ++k) {
        const cplx a(k + r.shift, -r.eps(k));
        out.push_back(a);
        out.push_back(-std::conj(a));
      }
      break;
    }
    case Variant::E2Tilde:
      for (int j = 0; j < 3; ++j) out.push_back(cplx(0.0, -0.5));
      [[fallthrough]];
    case Variant::E1:
    case Variant::E2:
      for (int n = 1; n <= count; ++n) out.push_back(dyadic_zero(*this, n));
      break;
  }
  return out;
}

namespace {

ProductValue eval_pairs(const CanonicalProduct& e, cplx z, double rel_tol, std::optional<long> fixed) {
  const PairRule r = pair_rule(e);
  const double az = std::abs(z);
  const double a = az * az + 2.0 * az;
  auto remainder = [&](long k) {
    const double ks = static_cast<double>(k) + r.shift;
    if (a / (ks * ks) > 0.5) return kInf;
    // |log(1+w) - w| <= |w|^2 with sum_{k>K} (k+s)^{-4} <= 1/(3 (K+s)^3).
    const double quad = a * a / (3.0 * ks * ks * ks);
    // Midpoint replacement of the tail sums by integrals.
    const double km = ks - 1.0;
    const double mid = a / (10.0 * km * km * km);
    return quad + mid;
  };
  long k_used;
  if (fixed) {
    if (*fixed < 2) throw DomainError("fixed truncation must be at least 2");
    k_used = *fixed;
  } else {
    const double need_q = std::cbrt(a * a / (1.5 * rel_tol)) - r.shift;
    const double need_m = std::cbrt(a / (5.0 * rel_tol)) + 1.0 - r.shift;
    const double need_w = std::sqrt(2.0 * a) - r.shift;
    const double need = std::max({64.0, need_q, need_m, need_w}) + 1.0;
    k_used = need > static_cast<double>(kMaxFactors) ? kMaxFactors : static_cast<long>(std::ceil(need));
  }
  cplx acc = z + kI;
  const cplx z2 = z * z;
  for (long k = 1; k <= k_used; ++k) {
    const double kd = static_cast<double>(k);
    const double re = kd + r.shift;
    const double ep = r.eps(kd);
    const double m2 = re * re + ep * ep;
    acc *= 1.0 - (2.0 * kI * ep * z + z2) / m2;
  }
  // Tail sums T1 = sum 1/|a_k|^2 and T2 = sum eps_k/|a_k|^2 over k > K.
  boost::math::quadrature::exp_sinh<double> integrator;
  const double start = static_cast<double>(k_used) + 0.5;
  auto f1 = [&](double x) {
    const double re = x + r.shift, ep = r.eps(x);
    return 1.0 / (re * re + ep * ep);
  };
  auto f2 = [&](double x) {
    const double re = x + r.shift, ep = r.eps(x);
    return ep / (re * re + ep * ep);
  };
  double e1 = 0.0, e2 = 0.0;
  const double t1 = integrator.integrate([&](double t) { return f1(start + t); }, 0.0, kInf, 1e-14, &e1);
  const double t2 = integrator.integrate([&](double t) { return f2(start + t); }, 0.0, kInf, 1e-14, &e2);
  const cplx correction = -z2 * t1 - 2.0 * kI * z * t2;
  acc *= std::exp(correction);
  ProductValue out;
  out.value = acc;
  out.truncation = k_used;
  out.tail_correction = std::abs(correction);
  const double log_err = remainder(k_used) + az * az * e1 + 2.0 * az * e2;
  out.relative_error = std::expm1(log_err) + 8.0 * static_cast<double>(k_used) * kEps;
  if (!fixed && !(out.relative_error <= rel_tol)) {
    throw PartialResultError("canonical product: accuracy unachievable within the factor cap",
                             acc.real(), acc.imag(), out.relative_error);
  }
  return out;
}

ProductValue eval_dyadic(const CanonicalProduct& e, cplx z, double rel_tol, std::optional<long> fixed) {
  const double az = std::abs(z);
  // Zeros satisfy |zero_n| >= 2^n, so the tail after N factors has
  // sum |z/zero_n| <= |z| 2^{-N} and |log(1+w)| <= 2|w| once |w| <= 1/2.
  auto bound = [&](long n) {
    const double s = az * std::ldexp(1.0, static_cast<int>(-n));
    if (s > 1.0) return kInf;
    return std::expm1(2.0 * s);
  };
  long n_used;
  if (fixed) {
    if (*fixed < 1) throw DomainError("fixed truncation must be positive");
    n_used = *fixed;
  } else {
    n_used = 1;
    while (bound(n_used) > 0.5 * rel_tol && n_used < 1000) ++n_used;
  }
  cplx acc = 1.0;
  for (long n = 1; n <= n_used; ++n) acc *= 1.0 - z / dyadic_zero(e, static_cast<int>(n));
  if (e.variant == CanonicalProduct::Variant::E2Tilde) {
    const cplx f = z + 0.5 * kI;
    acc *= f * f * f;
  }
  ProductValue out;
  out.value = acc;
  out.truncation = n_used;
  out.relative_error = bound(n_used) + 8.0 * static_cast<double>(n_used + 3) * kEps;
  if (!fixed && !(out.relative_error <= rel_tol)) {
    throw PartialResultError("canonical product: accuracy unachievable", acc.real(), acc.imag(),
                             out.relative_error);
  }
  return out;
}

}  // namespace

ProductValue eval_product(const CanonicalProduct& e, cplx z, double rel_tol, std::optional<long> fixed) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("non-finite argument");
  if (!(rel_tol > 0.0)) throw DomainError("relative tolerance must be positive");
  switch (e.variant) {
    case CanonicalProduct::Variant::EDelta:
    case CanonicalProduct::Variant::EQuarter: return eval_pairs(e, z, rel_tol, fixed);
    default: return eval_dyadic(e, z, rel_tol, fixed);
  }
}

// ---- Lyubarskii-Seip ratio --------------------------------------------------

double distance_to_zeros(double delta, double x) {
  double best = std::hypot(x, 1.0);  // the zero at -i
  for (const double sign : {1.0, -1.0}) {
    const double y = sign * x;  // zeros sign*(k - delta) - i k^{-4 delta}
    const long center = std::max<long>(1, static_cast<long>(std::floor(y + delta)));
    for (long k = std::max<long>(1, center - 2); k <= center + 3; ++k) {
      const double kd = static_cast<double>(k);
      best = std::min(best, std::hypot(y - (kd - delta), std::pow(kd, -4.0 * delta)));
    }
  }
  return best;
}

std::vector<double> zero_midpoints(double delta, int count) {
  std::vector<double> xs;
  for (int k = 1; k <= count; ++k) xs.push_back(k - delta + 0.5);
  return xs;
}

LsRatioReport lyubarskii_seip_ratio(double delta, const std::vector<double>& xs) {
  const CanonicalProduct e = CanonicalProduct::e_delta(delta);
  for (const double x : xs) {
    const double frac = std::abs(x) + delta;
    if (std::abs(frac - std::round(frac)) < 1e-6 && std::round(frac) >= 1.0) {
      throw DomainError("sample x = " + std::to_string(x) + " lies within 1e-6 of a zero's real part");
    }
  }
  LsRatioReport out;
  out.delta = delta;
  out.samples.resize(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    const double x = xs[i];
    LsSample s;
    s.x = x;
    s.abs_e = std::abs(eval_product(e, cplx(x, 0.0)).value);
    s.dist = distance_to_zeros(delta, x);
    s.ratio = s.abs_e / (std::pow(1.0 + std::abs(x), 2.0 * delta) * s.dist);
    out.samples[i] = s;
  });
  out.min_ratio = kInf;
  out.max_ratio = 0.0;
  for (const auto& s : out.samples) {
    out.min_ratio = std::min(out.min_ratio, s.ratio);
    out.max_ratio = std::max(out.max_ratio, s.ratio);
  }
  if (out.samples.empty()) out.min_ratio = 0.0;
  return out;
}

// ---- Ahern-Clark at infinity ------------------------------------------------

AhernClarkReport ahern_clark_at_infinity(const ZeroSequence& seq) {
  if (!seq.tail) throw DomainError("zero sequence needs a tail rule (use kind 'finite' for a complete list)");
  AhernClarkReport r;
  r.listed = seq.zeros.size();
  for (const cplx mu : seq.zeros) {
    if (!(mu.imag() > 0.0)) throw DomainError("zeros must lie in the upper half-plane");
    r.partial_sum += mu.imag();
  }
  const TailRule& t = *seq.tail;
  if (t.kind == TailRule::Kind::Finite) {
    r.verdict = "finite";
  } else {
    if (!(t.scale > 0.0) || !(t.ratio > 0.0)) throw DomainError("geometric tail needs positive scale and ratio");
    if (t.ratio >= 1.0) {
      r.verdict = "divergent";
      r.tail_sum = kInf;
      r.tail_bound = kInf;
      r.total = kInf;
      return r;
    }
    r.tail_sum = t.scale * std::pow(t.ratio, static_cast<double>(t.start)) / (1.0 - t.ratio);
    r.verdict = "finite";
  }
  r.total = r.partial_sum + r.tail_sum;
  r.tail_bound = r.tail_sum;
  return r;
}

ZeroSequence conjugate_zero_sequence(const CanonicalProduct& e, int count) {
  if (count < 0) throw DomainError("count must be non-negative");
  ZeroSequence s;
  for (const cplx z : e.zeros(count)) s.zeros.push_back(std::conj(z));
  TailRule t;
  t.kind = TailRule::Kind::Geometric;
  t.start = count + 1;
  t.scale = 1.0;
  if (e.variant == CanonicalProduct::Variant::E1) {
    t.ratio = 2.0;
  } else if (e.variant == CanonicalProduct::Variant::E2Tilde || e.variant == CanonicalProduct::Variant::E2) {
    t.ratio = 0.25;
  } else {
    throw NotImplementedError("conjugate zero sequence only for E1, E2 and E2_tilde");
  }
  s.tail = t;
  return s;
}

AnnulusSup e1_e2_annulus_sup(int m, int radii, int angles) {
  if (m < 1 || radii < 2 || angles < 2) throw DomainError("annulus sweep needs m >= 1 and >= 2 samples per axis");
  const double r0 = std::ldexp(1.0, m) - std::ldexp(1.0, m - 2);
  const double r1 = std::ldexp(1.0, m) + std::ldexp(1.0, m - 1);
  const CanonicalProduct e1 = CanonicalProduct::e1(), e2 = CanonicalProduct::e2_tilde();
  const std::size_t n = static_cast<std::size_t>(radii) * static_cast<std::size_t>(angles);
  std::vector<double> vals(n), errs(n);
  std::vector<cplx> pts(n);
  parallel_for(n, [&](std::size_t idx) {
    const int i = static_cast<int>(idx / static_cast<std::size_t>(angles));
    const int j = static_cast<int>(idx % static_cast<std::size_t>(angles));
    const double r = r0 + (r1 - r0) * i / (radii - 1);
    const cplx z = std::polar(r, kPi * j / (angles - 1));
    const ProductValue a = eval_product(e1, z), b = eval_product(e2, z);
    pts[idx] = z;
    vals[idx] = std::abs(a.value / b.value);
    errs[idx] = a.relative_error + b.relative_error;
  });
  AnnulusSup out;
  out.m = m;
  for (std::size_t k = 0; k < n; ++k) {
    if (vals[k] > out.sup) {
      out.sup = vals[k];
      out.argmax = pts[k];
    }
    out.max_relative_error = std::max(out.max_relative_error, errs[k]);
  }
  return out;
}

double halfplane_membership_residual(const AnalyticFunction& phi, const InnerFunction& u,
                                     const InnerFunction& v, double* tail_bound) {
  if (!u.is_finite_blaschke() || !v.is_finite_blaschke()) {
    throw DomainError("half-plane membership check needs finite Blaschke products");
  }
  const ModelSpaceBasis basis(u);
  const AnalyticFunction va = v.as_analytic();
  const HalfPlaneFunction big_phi = compose_cayley(phi.fn);
  const int n = *v.degree();
  double worst = 0.0, tails = 0.0;
  for (const AnalyticFunction& e : basis.analytic_elements()) {
    const HalfPlaneFunction ue = transfer(e.fn);
    const HalfPlaneFunction f = [big_phi, ue](cplx z) { return big_phi(z) * ue(z); };
    const LineIntegral nn = line_inner(f, f);
    const double norm = std::sqrt(std::max(nn.value.real(), 0.0));
    tails = std::max(tails, nn.tail_bound);
    for (int t = 0; t <= 2 * n; ++t) {
      const HalfPlaneFunction g = transfer([va, t](cplx w) { return va(w) * std::pow(w, t); });
      const LineIntegral ip = line_inner(f, g);
      tails = std::max(tails, ip.tail_bound);
      if (norm > 0.0) worst = std::max(worst, std::abs(ip.value) / norm);
    }
  }
  if (tail_bound) *tail_bound = tails;
  return worst;
}

// ---- JSON -------------------------------------------------------------------

json to_json(const LineIntegral& r) {
  return {{"value", complex_to_json(r.value)},
          {"truncation_T", r.truncation},
          {"tail_bound", r.tail_bound},
          {"quadrature_error", r.quadrature_error}};
}

json to_json(const ProductValue& r) {
  return {{"value", complex_to_json(r.value)},
          {"abs", std::abs(r.value)},
          {"relative_error_bound", r.relative_error},
          {"truncation", r.truncation},
          {"tail_log_correction", r.tail_correction}};
}

json to_json(const LsRatioReport& r, bool include_samples) {
  json j = {{"delta", r.delta}, {"min_ratio", r.min_ratio}, {"max_ratio", r.max_ratio},
            {"spread", r.min_ratio > 0.0 ? r.max_ratio / r.min_ratio : kInf}};
  if (include_samples) {
    json s = json::array();
    for (const auto& x : r.samples) {
      s.push_back({{"x", x.x}, {"abs_E", x.abs_e}, {"dist", x.dist}, {"ratio", x.ratio}});
    }
    j["samples"] = s;
  }
  return j;
}

namespace {
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
}  // namespace

json to_json(const AhernClarkReport& r) {
  return {{"partial_sum", r.partial_sum},
          {"tail_sum", finite_or_null(r.tail_sum)},
          {"tail_bound", finite_or_null(r.tail_bound)},
          {"total", finite_or_null(r.total)},
          {"verdict", r.verdict},
          {"listed", r.listed}};
}

json to_json(const AnnulusSup& r) {
  return {{"m", r.m}, {"sup", r.sup}, {"argmax", complex_to_json(r.argmax)},
          {"max_relative_error", r.max_relative_error}};
}

ZeroSequence zero_sequence_from_json(const json& j, const std::string& pointer) {
  ZeroSequence s;
  s.zeros = complex_list_from_json(require(j, "zeros", pointer), pointer + "/zeros");
  if (j.contains("tail")) {
    const json& t = j["tail"];
    const std::string tp = pointer + "/tail";
    TailRule rule;
    const std::string kind = require(t, "kind", tp).is_string() ? t["kind"].get<std::string>() : "";
    if (kind == "finite") {
      rule.kind = TailRule::Kind::Finite;
    } else if (kind == "geometric") {
      rule.kind = TailRule::Kind::Geometric;
      rule.scale = require_number(require(t, "scale", tp), tp + "/scale");
      rule.ratio = require_number(require(t, "ratio", tp), tp + "/ratio");
      rule.start = require_int(require(t, "start", tp), tp + "/start");
    } else {
      throw DescriptorError("tail kind must be 'finite' or 'geometric'", tp + "/kind");
    }
    s.tail = rule;
  }
  return s;
}

json to_json(const ZeroSequence& s) {
  json j = {{"zeros", complex_list_to_json(s.zeros)}};
  if (s.tail) {
    if (s.tail->kind == TailRule::Kind::Finite) {
      j["tail"] = {{"kind", "finite"}};
    } else {
      j["tail"] = {{"kind", "geometric"}, {"scale", s.tail->scale}, {"ratio", s.tail->ratio},
                   {"start", s.tail->start}};
    }
  }
  return j;
}

}  // namespace modelmult
