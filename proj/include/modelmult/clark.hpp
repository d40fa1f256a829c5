#pragma once

#include <functional>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "modelmult/inner.hpp"

namespace modelmult {

struct MeasureAtom {
  cplx point;
  double weight = 0.0;
  long index = 0;  // position in the defining family (n for the singular example)
};

/// Positive atomic measure on the circle. `tail_bound` bounds the total mass
/// of atoms left out of a truncated infinite list.
struct AtomicMeasure {
  std::vector<MeasureAtom> atoms;
  double tail_bound = 0.0;

  double listed_mass() const;
  /// Sum of w (1 - |z|^2)/|xi - z|^2 over the listed atoms.
  double poisson(cplx z) const;
  /// Atoms must be positive, finite and pairwise distinct (within 1e-12).
  void validate() const;
};

/// Clark measure of u: the measure whose Poisson integral is
/// (1 - |u|^2)/|1 - u|^2. Supported for finite Blaschke products (atoms at
/// the solutions of u = 1, weights 1/|u'|) and single-atom singular
/// functions exp(-w (xi0 + z)/(xi0 - z)) truncated to |n| <= truncation.
AtomicMeasure clark_measure(const InnerFunction& u, int truncation = 200);

struct PoissonReport {
  double max_residual = 0.0;
  /// max over samples of residual - tail_bound (1 + |z|)/(1 - |z|).
  double max_excess = 0.0;
  bool within_tail_bound = true;
  double tail_bound = 0.0;
  std::size_t samples = 0;
  std::size_t skipped = 0;
  std::vector<std::string> notes;
};

/// |(1 - |u|^2)/|1 - u|^2 - sum w P(z, xi)| over the samples. Points with
/// |1 - u(z)| < 1e-12 are skipped. A small rounding slack (1e-12 relative)
/// is added to the tail allowance.
PoissonReport poisson_identity_residual(const InnerFunction& u, const AtomicMeasure& mu,
                                        const std::vector<cplx>& samples);

struct AbsoluteContinuityReport {
  std::string verdict;  // multiplier-candidate | unbounded-density | not-absolutely-continuous | undetermined
  double h_sup = 0.0;
  std::size_t matched = 0;
  std::vector<std::string> notes;
};

/// h = d sigma_u / d sigma_v atomwise. `tail_ratio_bound` bounds h on atoms
/// omitted from a truncated sigma_u (required when sigma_u has tail mass).
AbsoluteContinuityReport absolute_continuity_multiplier(const AtomicMeasure& sigma_u,
                                                        const AtomicMeasure& sigma_v,
                                                        std::optional<double> tail_ratio_bound = std::nullopt,
                                                        double h_limit = 1e12);

/// Atoms of mu with weights multiplied by factor(index); atoms whose new
/// weight is zero are dropped. The tail bound is scaled by `tail_factor`.
AtomicMeasure reweighted(const AtomicMeasure& mu, const std::function<double(long)>& factor,
                         double tail_factor);

nlohmann::json to_json(const AtomicMeasure& mu);
AtomicMeasure atomic_measure_from_json(const nlohmann::json& j, const std::string& pointer = "");
nlohmann::json to_json(const PoissonReport& r);
nlohmann::json to_json(const AbsoluteContinuityReport& r);

}  // namespace modelmult
