#include "modelmult/inner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "modelmult/errors.hpp"
#include "modelmult/parallel.hpp"

namespace modelmult {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr long kMaxTerms = 1L << 20;

double wrap_turns(double t) {
  t -= std::floor(t);
  return t >= 1.0 ? 0.0 : t;
}

}  // namespace

struct InnerFunction::Node {
  std::variant<FiniteBlaschkeData, InfiniteBlaschkeData, AtomicSingularData, ProductData,
               FrostmanData>
      data;
};

// ---- ZeroRule ---------------------------------------------------------------

void ZeroRule::validate() const {
  if (!std::isfinite(point_turns)) throw DomainError("zero rule point must be finite");
  if (!(scale > 0.0)) throw DomainError("zero rule scale must be positive");
  if (start < 1) throw DomainError("zero rule start index must be >= 1");
  if (kind == Kind::Geometric) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw DomainError("geometric zero rule needs 0 < ratio < 1");
  } else if (!(exponent > 1.0)) {
    throw DomainError("power zero rule needs exponent > 1 (Blaschke condition)");
  }
  if (!(gap(start) > 0.0 && gap(start) <= 1.0)) {
    throw DomainError("zero rule must produce zeros in the disk: need 0 < gap(start) <= 1");
  }
}

double ZeroRule::gap(long n) const {
  if (kind == Kind::Geometric) return scale * std::pow(ratio, static_cast<double>(n));
  return scale * std::pow(static_cast<double>(n), -exponent);
}

double ZeroRule::tail_mass(long last) const {
  const long first = std::max<long>(last + 1, start);
  if (kind == Kind::Geometric) return gap(first) / (1.0 - ratio);
  // sum_{n >= first} n^{-p} <= first^{-p} + integral_first^inf x^{-p} dx
  const double f = static_cast<double>(first);
  return scale * (std::pow(f, -exponent) + std::pow(f, 1.0 - exponent) / (exponent - 1.0));
}

// ---- construction -----------------------------------------------------------

InnerFunction::InnerFunction() : node_(std::make_shared<Node>(Node{FiniteBlaschkeData{}})) {}

InnerFunction InnerFunction::finite_blaschke(std::vector<cplx> zeros) {
  for (const cplx a : zeros) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !(std::abs(a) < 1.0)) {
      throw DomainError("Blaschke zero outside the open unit disk");
    }
  }
  return InnerFunction(std::make_shared<Node>(Node{FiniteBlaschkeData{std::move(zeros)}}));
}

InnerFunction InnerFunction::infinite_blaschke(ZeroRule rule) {
  rule.validate();
  return InnerFunction(std::make_shared<Node>(Node{InfiniteBlaschkeData{rule}}));
}

InnerFunction InnerFunction::atomic_singular(std::vector<Atom> atoms) {
  if (atoms.empty()) throw DomainError("atomic singular function needs at least one atom");
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.angle_turns)) throw DomainError("atom angle must be finite");
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
      throw DomainError("atom weight must be positive and finite");
    }
  }
  return InnerFunction(std::make_shared<Node>(Node{AtomicSingularData{std::move(atoms)}}));
}

InnerFunction InnerFunction::product(const InnerFunction& left, const InnerFunction& right) {
  return InnerFunction(std::make_shared<Node>(Node{ProductData{left, right}}));
}

InnerFunction InnerFunction::product(const std::vector<InnerFunction>& factors) {
  if (factors.empty()) return InnerFunction();
  InnerFunction acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = product(acc, factors[i]);
  return acc;
}

InnerFunction frostman_shift(const InnerFunction& u, cplx a) {
  if (!(std::abs(a) < 1.0)) throw DomainError("Frostman parameter must lie in the open disk");
  if (a == cplx{}) return u;
  return InnerFunction(
      std::make_shared<InnerFunction::Node>(InnerFunction::Node{FrostmanData{u, a}}));
}

InnerFunction::Kind InnerFunction::kind() const noexcept {
  return static_cast<Kind>(node_->data.index());
}

std::string InnerFunction::tag() const {
  switch (kind()) {
    case Kind::FiniteBlaschke: return "finite_blaschke";
    case Kind::InfiniteBlaschke: return "infinite_blaschke";
    case Kind::AtomicSingular: return "atomic_singular";
    case Kind::Product: return "product";
    case Kind::FrostmanShift: return "frostman_shift";
  }
  return "unknown";
}

const FiniteBlaschkeData& InnerFunction::as_finite() const {
  return std::get<FiniteBlaschkeData>(node_->data);
}
const InfiniteBlaschkeData& InnerFunction::as_infinite() const {
  return std::get<InfiniteBlaschkeData>(node_->data);
}
const AtomicSingularData& InnerFunction::as_atomic() const {
  return std::get<AtomicSingularData>(node_->data);
}
const ProductData& InnerFunction::as_product() const { return std::get<ProductData>(node_->data); }
const FrostmanData& InnerFunction::as_frostman() const {
  return std::get<FrostmanData>(node_->data);
}

// ---- evaluation -------------------------------------------------------------

cplx blaschke_factor(cplx lambda, cplx z) {
  if (lambda == cplx{}) return z;
  const double m = std::abs(lambda);
  return (m / lambda) * (lambda - z) / (1.0 - std::conj(lambda) * z);
}

Certified InnerFunction::eval(cplx z, double target) const {
  if (!(std::abs(z) < 1.0)) throw DomainError("evaluation point must satisfy |z| < 1");
  return eval_any(z, target, false);
}

Certified InnerFunction::eval_boundary(cplx xi, double target) const {
  if (std::abs(std::abs(xi) - 1.0) > 1e-12) {
    throw DomainError("boundary evaluation needs |xi| = 1");
  }
  return eval_any(xi, target, true);
}

Certified InnerFunction::eval_any(cplx z, double target, bool boundary) const {
  switch (kind()) {
    case Kind::FiniteBlaschke: {
      const auto& zeros = as_finite().zeros;
      cplx acc = 1.0;
      for (const cplx a : zeros) acc *= blaschke_factor(a, z);
      return {acc, (8.0 * static_cast<double>(zeros.size()) + 4.0) * kEps * std::max(1.0, std::abs(acc))};
    }
    case Kind::AtomicSingular: {
      cplx expo{};
      for (const Atom& a : as_atomic().atoms) {
        const cplx xi = a.point();
        if (boundary && std::abs(xi - z) < 1e-12) {
          throw DomainError("boundary evaluation at a singular atom");
        }
        expo -= a.weight * (xi + z) / (xi - z);
      }
      const cplx v = std::exp(expo);
      return {v, 8.0 * kEps * (1.0 + std::abs(expo)) * std::abs(v) + kEps};
    }
    case Kind::InfiniteBlaschke: {
      const ZeroRule& rule = as_infinite().rule;
      const cplx xi = rule.point();
      const double az = std::abs(z);
      const double to_point = std::abs(xi - z);
      cplx acc = 1.0;
      double bound = kInf;
      long n = rule.start;
      for (; n - rule.start < kMaxTerms; ++n) {
        acc *= blaschke_factor(rule.zero(n), z);
        // Remaining zeros lie within gap(n+1) of xi, so
        // |1 - conj(l) z| >= max(1 - |z|, |xi - z| - gap(n+1)).
        const double d = std::max(1.0 - az, to_point - rule.gap(n + 1));
        const double rounding = 8.0 * static_cast<double>(n - rule.start + 2) * kEps;
        if (d > 0.0) {
          const double s = rule.tail_mass(n) * (1.0 + az) / d;
          bound = std::abs(acc) * std::expm1(s) + rounding;
          if (bound <= 0.5 * target || s < 1e-17) break;
        }
      }
      if (!(bound <= target)) {
        if (boundary && !(to_point > 0.0)) {
          throw DomainError("boundary evaluation at the accumulation point of the zeros");
        }
        throw PartialResultError("infinite Blaschke product: tail bound not certifiable at this point",
                                 acc.real(), acc.imag(), bound);
      }
      return {acc, bound};
    }
    case Kind::Product: {
      const auto& p = as_product();
      const Certified a = p.left.eval_any(z, target / 2, boundary);
      const Certified b = p.right.eval_any(z, target / 2, boundary);
      const double err = std::abs(a.value) * b.error + std::abs(b.value) * a.error + a.error * b.error;
      return {a.value * b.value, err + 2.0 * kEps * std::abs(a.value * b.value)};
    }
    case Kind::FrostmanShift: {
      const auto& f = as_frostman();
      const double amod = std::abs(f.a);
      // The Moebius map has derivative (1-|a|^2)/(1-conj(a) w)^2.
      const Certified w = f.base.eval_any(z, target * (1.0 - amod) / 4.0, boundary);
      const cplx den = 1.0 - std::conj(f.a) * w.value;
      const double slack = std::abs(den) - amod * w.error;
      const double err = slack > 0.0 ? w.error * (1.0 - amod * amod) / (slack * slack) : kInf;
      const cplx v = (w.value - f.a) / den;
      return {v, err + 4.0 * kEps * std::max(1.0, std::abs(v))};
    }
  }
  throw EvaluationError("unknown inner function variant");
}

// ---- finite structure -------------------------------------------------------

bool InnerFunction::is_finite_blaschke() const {
  switch (kind()) {
    case Kind::FiniteBlaschke: return true;
    case Kind::Product: return as_product().left.is_finite_blaschke() && as_product().right.is_finite_blaschke();
    case Kind::FrostmanShift: return as_frostman().base.is_finite_blaschke();
    default: return false;
  }
}

std::vector<cplx> InnerFunction::finite_zeros() const {
  switch (kind()) {
    case Kind::FiniteBlaschke: return as_finite().zeros;
    case Kind::Product: {
      std::vector<cplx> z = as_product().left.finite_zeros();
      const std::vector<cplx> r = as_product().right.finite_zeros();
      z.insert(z.end(), r.begin(), r.end());
      return z;
    }
    case Kind::FrostmanShift: {
      const RationalFunction r = as_rational();
      std::vector<cplx> roots = r.numerator().roots();
      for (const cplx a : roots) {
        if (!(std::abs(a) < 1.0)) throw EvaluationError("Frostman shift zero left the disk numerically");
      }
      return roots;
    }
    default:
      throw DomainError("'" + tag() + "' is not a finite Blaschke product");
  }
}

std::optional<int> InnerFunction::degree() const {
  if (!is_finite_blaschke()) return std::nullopt;
  if (kind() == Kind::FrostmanShift) return as_frostman().base.degree();
  if (kind() == Kind::Product) return *as_product().left.degree() + *as_product().right.degree();
  return static_cast<int>(as_finite().zeros.size());
}

RationalFunction InnerFunction::as_rational() const {
  switch (kind()) {
    case Kind::FiniteBlaschke: {
      const auto& zeros = as_finite().zeros;
      cplx gamma = 1.0;
      for (const cplx a : zeros) {
        if (a != cplx{}) gamma *= -std::abs(a) / a;
      }
      return {gamma * Polynomial::from_roots(zeros), reflected_product(zeros)};
    }
    case Kind::Product:
      return as_product().left.as_rational() * as_product().right.as_rational();
    case Kind::FrostmanShift: {
      const auto& f = as_frostman();
      const RationalFunction r = f.base.as_rational();
      return {r.numerator() - f.a * r.denominator(), r.denominator() - std::conj(f.a) * r.numerator()};
    }
    default:
      throw DomainError("'" + tag() + "' has no rational form");
  }
}

double InnerFunction::analytic_radius() const {
  switch (kind()) {
    case Kind::FiniteBlaschke: {
      double r = kInf;
      for (const cplx a : as_finite().zeros) {
        if (a != cplx{}) r = std::min(r, 1.0 / std::abs(a));
      }
      return r;
    }
    case Kind::Product:
      return std::min(as_product().left.analytic_radius(), as_product().right.analytic_radius());
    case Kind::FrostmanShift:
      if (is_finite_blaschke()) return as_rational().pole_radius();
      return 1.0;
    default:
      return 1.0;
  }
}

namespace {

// Evaluation without the disk check, for finite products beyond the circle.
cplx eval_extended(const InnerFunction& u, cplx z) {
  using K = InnerFunction::Kind;
  switch (u.kind()) {
    case K::FiniteBlaschke: {
      cplx acc = 1.0;
      for (const cplx a : u.as_finite().zeros) acc *= blaschke_factor(a, z);
      return acc;
    }
    case K::Product:
      return eval_extended(u.as_product().left, z) * eval_extended(u.as_product().right, z);
    case K::FrostmanShift: {
      const auto& f = u.as_frostman();
      const cplx w = eval_extended(f.base, z);
      return (w - f.a) / (1.0 - std::conj(f.a) * w);
    }
    default:
      return u(z);
  }
}

}  // namespace

AnalyticFunction InnerFunction::as_analytic() const {
  const InnerFunction self = *this;
  if (is_finite_blaschke()) {
    return {[self](cplx z) { return eval_extended(self, z); }, analytic_radius()};
  }
  return {[self](cplx z) { return self(z); }, 1.0};
}

// ---- boundary spectrum ------------------------------------------------------

namespace {

void collect_spectrum(const InnerFunction& u, std::vector<double>& points) {
  using K = InnerFunction::Kind;
  switch (u.kind()) {
    case K::FiniteBlaschke: return;
    case K::InfiniteBlaschke: points.push_back(wrap_turns(u.as_infinite().rule.point_turns)); return;
    case K::AtomicSingular:
      for (const Atom& a : u.as_atomic().atoms) points.push_back(wrap_turns(a.angle_turns));
      return;
    case K::Product:
      collect_spectrum(u.as_product().left, points);
      collect_spectrum(u.as_product().right, points);
      return;
    case K::FrostmanShift: collect_spectrum(u.as_frostman().base, points); return;
  }
}

double arc_length(const Arc& a) { return wrap_turns(a.end_turns - a.start_turns); }

// Offset of t from the start of arc a, counterclockwise, in [0, 1).
double offset_in(const Arc& a, double t, double tol) {
  double off = wrap_turns(t - a.start_turns);
  if (off > 1.0 - tol) off = 0.0;
  return off;
}

bool arc_contains_point(const Arc& a, double t, double tol) {
  return offset_in(a, t, tol) <= arc_length(a) + tol;
}

}  // namespace

BoundarySpectrumEstimate InnerFunction::boundary_spectrum() const {
  std::vector<double> pts;
  collect_spectrum(*this, pts);
  std::sort(pts.begin(), pts.end());
  BoundarySpectrumEstimate out;
  for (const double t : pts) {
    if (!out.arcs.empty() && std::abs(out.arcs.back().start_turns - t) < 1e-15) continue;
    out.arcs.push_back({t, t});
  }
  out.is_exact = true;
  return out;
}

bool spectrum_contains(const BoundarySpectrumEstimate& big, const BoundarySpectrumEstimate& small,
                       double tol) {
  for (const Arc& s : small.arcs) {
    bool inside = false;
    for (const Arc& b : big.arcs) {
      const double off = offset_in(b, s.start_turns, tol);
      if (off + arc_length(s) <= arc_length(b) + tol) {
        inside = true;
        break;
      }
    }
    if (!inside) return false;
  }
  return true;
}

bool spectra_disjoint(const BoundarySpectrumEstimate& a, const BoundarySpectrumEstimate& b,
                      double tol) {
  for (const Arc& x : a.arcs) {
    for (const Arc& y : b.arcs) {
      if (arc_contains_point(x, y.start_turns, tol) || arc_contains_point(y, x.start_turns, tol)) {
        return false;
      }
    }
  }
  return true;
}

// ---- structural division ----------------------------------------------------

namespace {

struct FactorBag {
  std::vector<cplx> zeros;
  std::vector<Atom> atoms;
  std::vector<InnerFunction> others;
};

void flatten(const InnerFunction& u, FactorBag& bag) {
  using K = InnerFunction::Kind;
  switch (u.kind()) {
    case K::FiniteBlaschke: {
      const auto& z = u.as_finite().zeros;
      bag.zeros.insert(bag.zeros.end(), z.begin(), z.end());
      return;
    }
    case K::AtomicSingular: {
      for (const Atom& a : u.as_atomic().atoms) {
        auto it = std::find_if(bag.atoms.begin(), bag.atoms.end(), [&](const Atom& b) {
          return std::abs(wrap_turns(b.angle_turns) - wrap_turns(a.angle_turns)) < 1e-12;
        });
        if (it != bag.atoms.end()) {
          it->weight += a.weight;
        } else {
          bag.atoms.push_back(a);
        }
      }
      return;
    }
    case K::Product:
      flatten(u.as_product().left, bag);
      flatten(u.as_product().right, bag);
      return;
    default: bag.others.push_back(u); return;
  }
}

}  // namespace

std::optional<InnerFunction> divide(const InnerFunction& v, const InnerFunction& u) {
  FactorBag bv, bu;
  flatten(v, bv);
  flatten(u, bu);
  for (const InnerFunction& f : bu.others) {
    auto it = std::find_if(bv.others.begin(), bv.others.end(),
                           [&](const InnerFunction& g) { return g.same_descriptor(f); });
    if (it == bv.others.end()) return std::nullopt;
    bv.others.erase(it);
  }
  for (const cplx a : bu.zeros) {
    auto it = std::find_if(bv.zeros.begin(), bv.zeros.end(),
                           [&](cplx b) { return std::abs(a - b) < 1e-12; });
    if (it == bv.zeros.end()) return std::nullopt;
    bv.zeros.erase(it);
  }
  for (const Atom& a : bu.atoms) {
    auto it = std::find_if(bv.atoms.begin(), bv.atoms.end(), [&](const Atom& b) {
      return std::abs(wrap_turns(b.angle_turns) - wrap_turns(a.angle_turns)) < 1e-12;
    });
    if (it == bv.atoms.end() || it->weight < a.weight - 1e-12) return std::nullopt;
    it->weight -= a.weight;
  }
  std::vector<InnerFunction> factors;
  if (!bv.zeros.empty()) factors.push_back(InnerFunction::finite_blaschke(bv.zeros));
  std::vector<Atom> atoms;
  for (const Atom& a : bv.atoms) {
    if (a.weight > 1e-12) atoms.push_back(a);
  }
  if (!atoms.empty()) factors.push_back(InnerFunction::atomic_singular(atoms));
  factors.insert(factors.end(), bv.others.begin(), bv.others.end());
  return InnerFunction::product(factors);
}

bool InnerFunction::same_descriptor(const InnerFunction& other) const {
  return node_ == other.node_ || to_json() == other.to_json();
}

// ---- sub-level sets ---------------------------------------------------------

SublevelReport sublevel_contained(const InnerFunction& u, const InnerFunction& v, double eps_u,
                                  double eps_v, const DiskGrid& grid) {
  if (!(eps_u > 0.0 && eps_u < 1.0 && eps_v > 0.0 && eps_v < 1.0)) {
    throw DomainError("sub-level thresholds must lie in (0, 1)");
  }
  const auto& pts = grid.points();
  std::vector<double> au(pts.size(), -1.0), av(pts.size(), -1.0);
  parallel_for(pts.size(), [&](std::size_t i) {
    try {
      av[i] = std::abs(v(pts[i]));
      au[i] = std::abs(u(pts[i]));
    } catch (const Error&) {
      av[i] = -1.0;
    }
  });
  SublevelReport r;
  r.eps_u = eps_u;
  r.eps_v = eps_v;
  r.grid = grid.spec();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (av[i] < 0.0 || au[i] < 0.0) {
      ++r.skipped;
      continue;
    }
    ++r.points_checked;
    if (!(av[i] < eps_v)) continue;
    ++r.points_in_v_sublevel;
    if (au[i] < eps_u) continue;
    if (r.witness_count++ == 0) {
      r.witness = pts[i];
      r.witness_abs_u = au[i];
      r.witness_abs_v = av[i];
    }
  }
  r.contained = r.witness_count == 0;
  return r;
}

}  // namespace modelmult
