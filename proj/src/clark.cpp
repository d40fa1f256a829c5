#include "modelmult/clark.hpp"

#include <algorithm>
#include <cmath>

#include "modelmult/errors.hpp"
#include "modelmult/json_io.hpp"

namespace modelmult {

using nlohmann::json;

double AtomicMeasure::listed_mass() const {
  double m = 0.0;
  for (const auto& a : atoms) m += a.weight;
  return m;
}

double AtomicMeasure::poisson(cplx z) const {
  const double p = 1.0 - std::norm(z);
  double acc = 0.0;
  for (const auto& a : atoms) acc += a.weight * p / std::norm(a.point - z);
  return acc;
}

void AtomicMeasure::validate() const {
  if (!(tail_bound >= 0.0)) throw DataError("tail bound must be non-negative");
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!(atoms[i].weight > 0.0) || !std::isfinite(atoms[i].weight)) {
      throw DataError("atom weights must be positive and finite");
    }
    if (std::abs(std::abs(atoms[i].point) - 1.0) > 1e-12) throw DataError("atom off the unit circle");
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(atoms[i].point - atoms[j].point) < 1e-12) throw DataError("atoms must be distinct");
    }
  }
}

namespace {

// |u'(xi)| on the circle for a Blaschke product (times a unimodular constant).
double boundary_derivative(const std::vector<cplx>& zeros, cplx xi) {
  double d = 0.0;
  for (const cplx a : zeros) d += (1.0 - std::norm(a)) / std::norm(xi - a);
  return d;
}

AtomicMeasure clark_finite(const InnerFunction& u) {
  const std::vector<cplx> zeros = u.finite_zeros();
  const int n = static_cast<int>(zeros.size());
  if (n == 0) throw DomainError("Clark measure of a constant inner function is not defined");
  const AnalyticFunction ua = u.as_analytic();
  // The boundary phase increases at rate |u'| <= sum (1+|a|)/(1-|a|); keep
  // every sampling step below a quarter turn of phase.
  double dmax = 0.0;
  for (const cplx a : zeros) dmax += (1.0 + std::abs(a)) / (1.0 - std::abs(a));
  const double m_needed = std::ceil(4.0 * dmax);
  if (m_needed > static_cast<double>(1 << 24)) {
    throw DomainError("zeros too close to the circle for phase tracking");
  }
  const long m = std::max<long>(64, static_cast<long>(m_needed));
  auto value_at = [&](double theta) { return ua(std::polar(1.0, theta)); };

  AtomicMeasure mu;
  const cplx w0 = value_at(0.0);
  double phase = std::arg(w0);
  cplx w_prev = w0;
  // Targets 2 pi j in [phase(0), phase(0) + 2 pi n) are hit exactly once each.
  double next_target = std::ceil(phase / kTwoPi) * kTwoPi;
  for (long k = 0; k < m && static_cast<int>(mu.atoms.size()) < n; ++k) {
    const double t0 = kTwoPi * static_cast<double>(k) / static_cast<double>(m);
    const double t1 = kTwoPi * static_cast<double>(k + 1) / static_cast<double>(m);
    const cplx w1 = value_at(t1);
    const double phase1 = phase + std::arg(w1 / w_prev);
    while (next_target < phase1 && static_cast<int>(mu.atoms.size()) < n) {
      // Bisection on the unwrapped phase inside this step.
      double lo = t0, hi = t1;
      const double target = next_target - phase;
      for (int it = 0; it < 80 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (std::arg(value_at(mid) / w_prev) < target) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      double theta = (target == 0.0) ? t0 : 0.5 * (lo + hi);
      for (int it = 0; it < 2; ++it) {
        const cplx xi = std::polar(1.0, theta);
        theta -= std::arg(value_at(theta)) / boundary_derivative(zeros, xi);
      }
      const cplx xi = std::polar(1.0, theta);
      mu.atoms.push_back({xi, 1.0 / boundary_derivative(zeros, xi), static_cast<long>(mu.atoms.size())});
      next_target += kTwoPi;
    }
    phase = phase1;
    w_prev = w1;
  }
  if (static_cast<int>(mu.atoms.size()) != n) {
    throw EvaluationError("phase tracking found " + std::to_string(mu.atoms.size()) + " of " +
                          std::to_string(n) + " Clark atoms");
  }
  return mu;
}

AtomicMeasure clark_single_atom(const Atom& atom, int truncation) {
  if (truncation < 0) throw DomainError("truncation must be non-negative");
  const cplx xi0 = atom.point();
  const double w = atom.weight;
  AtomicMeasure mu;
  for (long n = -truncation; n <= truncation; ++n) {
    const double x = kTwoPi * static_cast<double>(n) / w;
    const cplx ix(0.0, x);
    const cplx xi = xi0 * (ix - 1.0) / (ix + 1.0);
    const double weight = 2.0 * w / (w * w + 4.0 * kPi * kPi * static_cast<double>(n * n));
    mu.atoms.push_back({xi / std::abs(xi), weight, n});
  }
  // sum_{|n|>K} 2w/(4 pi^2 n^2) <= w/(pi^2 K)
  mu.tail_bound = truncation == 0 ? std::numeric_limits<double>::infinity()
                                  : w / (kPi * kPi * static_cast<double>(truncation));
  return mu;
}

}  // namespace

AtomicMeasure clark_measure(const InnerFunction& u, int truncation) {
  if (u.is_finite_blaschke()) return clark_finite(u);
  if (u.kind() == InnerFunction::Kind::AtomicSingular && u.as_atomic().atoms.size() == 1) {
    return clark_single_atom(u.as_atomic().atoms.front(), truncation);
  }
  throw NotImplementedError("Clark measure not implemented for variant '" + u.tag() +
                            (u.kind() == InnerFunction::Kind::AtomicSingular ? "' with several atoms" : "'"));
}

PoissonReport poisson_identity_residual(const InnerFunction& u, const AtomicMeasure& mu,
                                        const std::vector<cplx>& samples) {
  PoissonReport r;
  r.tail_bound = mu.tail_bound;
  r.max_excess = -std::numeric_limits<double>::infinity();
  for (const cplx z : samples) {
    if (!(std::abs(z) < 1.0)) throw DomainError("Poisson sample outside the disk");
    const cplx uz = u(z);
    const double d = std::norm(1.0 - uz);
    if (std::sqrt(d) < 1e-12) {
      ++r.skipped;
      continue;
    }
    const double lhs = (1.0 - std::norm(uz)) / d;
    const double rhs = mu.poisson(z);
    const double res = std::abs(lhs - rhs);
    const double allowance = mu.tail_bound * (1.0 + std::abs(z)) / (1.0 - std::abs(z)) +
                             1e-12 * std::max(1.0, std::abs(lhs));
    r.max_residual = std::max(r.max_residual, res);
    r.max_excess = std::max(r.max_excess, res - allowance);
    if (res > allowance) r.within_tail_bound = false;
    ++r.samples;
  }
  if (r.skipped > 0) {
    r.notes.push_back(std::to_string(r.skipped) + " sample(s) skipped: |1 - u(z)| < 1e-12");
  }
  if (r.samples == 0) r.max_excess = 0.0;
  return r;
}

AbsoluteContinuityReport absolute_continuity_multiplier(const AtomicMeasure& sigma_u,
                                                        const AtomicMeasure& sigma_v,
                                                        std::optional<double> tail_ratio_bound,
                                                        double h_limit) {
  for (const auto& a : sigma_v.atoms) {
    if (!(a.weight > 0.0)) throw DataError("sigma_v has an atom of zero weight; h is undefined there");
  }
  AbsoluteContinuityReport r;
  bool missing = false;
  for (const auto& a : sigma_u.atoms) {
    const auto it = std::find_if(sigma_v.atoms.begin(), sigma_v.atoms.end(),
                                 [&](const MeasureAtom& b) { return std::abs(a.point - b.point) < 1e-12; });
    if (it == sigma_v.atoms.end()) {
      missing = true;
      continue;
    }
    ++r.matched;
    r.h_sup = std::max(r.h_sup, a.weight / it->weight);
  }
  if (missing) {
    if (sigma_v.tail_bound > 0.0) {
      r.verdict = "undetermined";
      r.notes.push_back("an atom of sigma_u is not listed in the truncated sigma_v");
    } else {
      r.verdict = "not-absolutely-continuous";
      r.notes.push_back("sigma_u has an atom outside the support of sigma_v");
    }
    return r;
  }
  if (sigma_u.tail_bound > 0.0) {
    if (!tail_ratio_bound) {
      r.verdict = "undetermined";
      r.notes.push_back("sigma_u is truncated and no bound on h over omitted atoms was given");
      return r;
    }
    r.h_sup = std::max(r.h_sup, *tail_ratio_bound);
    r.notes.push_back("h over omitted atoms bounded by the supplied tail ratio");
  }
  if (r.h_sup < h_limit && std::isfinite(r.h_sup)) {
    r.verdict = "multiplier-candidate";
    r.notes.push_back("h is bounded, so (1 - v)/(1 - u) multiplies K_u into K_v");
  } else {
    r.verdict = "unbounded-density";
  }
  return r;
}

AtomicMeasure reweighted(const AtomicMeasure& mu, const std::function<double(long)>& factor,
                         double tail_factor) {
  AtomicMeasure out;
  for (const auto& a : mu.atoms) {
    const double f = factor(a.index);
    if (f < 0.0) throw DataError("reweighting factor must be non-negative");
    if (f > 0.0) out.atoms.push_back({a.point, a.weight * f, a.index});
  }
  out.tail_bound = mu.tail_bound * tail_factor;
  return out;
}

json to_json(const AtomicMeasure& mu) {
  json atoms = json::array();
  for (const auto& a : mu.atoms) {
    atoms.push_back({{"index", a.index}, {"angle_turns", to_turns(a.point)}, {"weight", a.weight}});
  }
  return {{"atoms", atoms}, {"tail_bound", mu.tail_bound}, {"listed_mass", mu.listed_mass()}};
}

AtomicMeasure atomic_measure_from_json(const json& j, const std::string& pointer) {
  AtomicMeasure mu;
  const json& atoms = require(j, "atoms", pointer);
  if (!atoms.is_array()) throw DescriptorError("'atoms' must be an array", pointer + "/atoms");
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string p = pointer + "/atoms/" + std::to_string(i);
    MeasureAtom a;
    a.point = from_turns(require_number(require(atoms[i], "angle_turns", p), p + "/angle_turns"));
    a.weight = require_number(require(atoms[i], "weight", p), p + "/weight");
    a.index = atoms[i].contains("index") ? require_int(atoms[i]["index"], p + "/index") : static_cast<long>(i);
    mu.atoms.push_back(a);
  }
  if (j.contains("tail_bound")) mu.tail_bound = require_number(j["tail_bound"], pointer + "/tail_bound");
  try {
    mu.validate();
  } catch (const DataError& e) {
    throw DescriptorError(e.what(), pointer);
  }
  return mu;
}

json to_json(const PoissonReport& r) {
  return {{"max_residual", r.max_residual},
          {"max_excess_over_allowance", r.max_excess},
          {"within_tail_bound", r.within_tail_bound},
          {"tail_bound", r.tail_bound},
          {"allowance_rule", "tail_bound * (1+|z|)/(1-|z|) + 1e-12 * max(1, lhs)"},
          {"samples", r.samples},
          {"skipped", r.skipped},
          {"notes", r.notes}};
}

json to_json(const AbsoluteContinuityReport& r) {
  return {{"verdict", r.verdict}, {"h_sup", r.h_sup}, {"matched_atoms", r.matched}, {"notes", r.notes}};
}

}  // namespace modelmult
