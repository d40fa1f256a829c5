#pragma once

#include <functional>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "modelmult/inner.hpp"
#include "modelmult/numerics.hpp"

namespace modelmult {

/// omega(z) = (z - i)/(z + i), upper half-plane onto the disk.
cplx cayley(cplx z);
/// omega^{-1}(w) = i (1 + w)/(1 - w).
cplx cayley_inverse(cplx w);

using HalfPlaneFunction = std::function<cplx(cplx)>;

/// (U f)(z) = f(omega(z)) / (sqrt(pi) (z + i)).
HalfPlaneFunction transfer(const std::function<cplx(cplx)>& f);
/// Phi = phi o omega.
HalfPlaneFunction compose_cayley(const std::function<cplx(cplx)>& phi);

struct LineIntegral {
  cplx value;
  double truncation = 0.0;  // T: integral taken over [-T, T]
  double tail_bound = 0.0;  // bound for the part outside [-T, T]
  double quadrature_error = 0.0;
};

/// Integral over the real line of F(x) conj(G(x)) dx for integrands decaying
/// like 1/x^2. T doubles until the estimated tail (1+x^2)|FG| at +-T times
/// (pi/2 - atan T) is below `tail_target`.
LineIntegral line_inner(const HalfPlaneFunction& f, const HalfPlaneFunction& g,
                        double tail_target = 1e-7);

/// Canonical products on the plane.
///   E_delta:   (z + i) prod_k (1 - z/a_k)(1 + z/conj(a_k)),  a_k = k - delta - i k^{-4 delta}
///   E_quarter: (z + i) prod_k (1 - z/a_k)(1 + z/conj(a_k)),  a_k = k + 1/4 - i
///   E1:        prod_n (1 + z/(2^n i))
///   E2:        prod_n (1 - z/(2^n - 2^{-2n} i))
///   E2_tilde:  (z + i/2)^3 E2
struct CanonicalProduct {
  enum class Variant { EDelta, EQuarter, E1, E2, E2Tilde };
  Variant variant = Variant::E1;
  double delta = 0.1;

  static CanonicalProduct e_delta(double delta);
  static CanonicalProduct e_quarter() { return {Variant::EQuarter, 0.25}; }
  static CanonicalProduct e1() { return {Variant::E1, 0.0}; }
  static CanonicalProduct e2() { return {Variant::E2, 0.0}; }
  static CanonicalProduct e2_tilde() { return {Variant::E2Tilde, 0.0}; }
  static CanonicalProduct from_name(const std::string& name, double delta = 0.1);
  std::string name() const;
  /// Zeros with index <= count (pairs counted once for symmetric products),
  /// plus the explicit polynomial-factor zeros.
  std::vector<cplx> zeros(int count) const;
};

struct ProductValue {
  cplx value;
  double relative_error = 0.0;  // certified bound on |E - value| / |value|
  long truncation = 0;          // number of factors (pairs) multiplied out
  double tail_correction = 0.0; // modulus of the log-tail correction applied
};

/// Evaluates E(z) with certified relative error <= rel_tol, choosing the
/// truncation adaptively, or with a fixed truncation when `fixed` is set (the
/// bound is then whatever that truncation certifies). PartialResultError
/// when the required truncation exceeds 5e6 factors.
ProductValue eval_product(const CanonicalProduct& e, cplx z, double rel_tol = 1e-9,
                          std::optional<long> fixed = std::nullopt);

struct LsSample {
  double x = 0.0;
  double abs_e = 0.0;
  double dist = 0.0;
  double ratio = 0.0;
};

struct LsRatioReport {
  double delta = 0.0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  std::vector<LsSample> samples;
};

/// Distance from real x to the zero set of E_delta.
double distance_to_zeros(double delta, double x);

/// |E_delta(x)| / ((1+|x|)^{2 delta} dist(x, Lambda_delta)) over xs.
/// delta in (0, 1/4); xs closer than 1e-6 to a zero's real part are refused.
LsRatioReport lyubarskii_seip_ratio(double delta, const std::vector<double>& xs);

/// Midpoints x_k = k - delta + 1/2, k = 1..count, of consecutive zero real parts.
std::vector<double> zero_midpoints(double delta, int count);

/// Imaginary parts beyond the explicit list: scale * ratio^n for n >= start.
struct TailRule {
  enum class Kind { Finite, Geometric };
  Kind kind = Kind::Finite;
  double scale = 0.0;
  double ratio = 0.0;
  long start = 1;
};

struct ZeroSequence {
  std::vector<cplx> zeros;          // explicit part, all with Im > 0
  std::optional<TailRule> tail;     // required
};

struct AhernClarkReport {
  double partial_sum = 0.0;
  double tail_sum = 0.0;     // exact geometric tail (finite verdict)
  double tail_bound = 0.0;
  double total = 0.0;
  std::string verdict;       // finite | divergent
  std::size_t listed = 0;
};

/// Sum of Im mu_n with the tail certified by the rule. DomainError without a rule.
AhernClarkReport ahern_clark_at_infinity(const ZeroSequence& seq);

/// Zeros of E^* / E in the upper half-plane (conjugates of E's zeros), the
/// first `count` explicitly and the rest as a tail rule. E1 and E2_tilde only.
ZeroSequence conjugate_zero_sequence(const CanonicalProduct& e, int count);

/// sup of |E1/E2_tilde| over the closed upper half of the annulus
/// 2^m - 2^{m-2} <= |z| <= 2^m + 2^{m-1} on a polar sample grid.
struct AnnulusSup {
  int m = 0;
  double sup = 0.0;
  cplx argmax;
  double max_relative_error = 0.0;
};
AnnulusSup e1_e2_annulus_sup(int m, int radii = 33, int angles = 129);

/// Half-plane counterpart of the membership check: max over K_u basis
/// elements e and t = 0..2 deg v of |<Phi U e, U(v z^t)>| / ||Phi U e||
/// with line quadrature. u, v finite Blaschke.
double halfplane_membership_residual(const AnalyticFunction& phi, const InnerFunction& u,
                                     const InnerFunction& v, double* tail_bound = nullptr);

nlohmann::json to_json(const LineIntegral& r);
nlohmann::json to_json(const ProductValue& r);
nlohmann::json to_json(const LsRatioReport& r, bool include_samples = true);
nlohmann::json to_json(const AhernClarkReport& r);
nlohmann::json to_json(const AnnulusSup& r);
ZeroSequence zero_sequence_from_json(const nlohmann::json& j, const std::string& pointer = "");
nlohmann::json to_json(const ZeroSequence& s);

}  // namespace modelmult
