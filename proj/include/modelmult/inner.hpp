#pragma once

#include <json.hpp>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "modelmult/grid.hpp"
#include "modelmult/numerics.hpp"
#include "modelmult/polynomial.hpp"

namespace modelmult {

/// Zeros accumulating radially at a boundary point xi = e^{2 pi i point_turns}:
///   geometric: lambda_n = xi (1 - scale * ratio^n),  n >= start
///   power:     lambda_n = xi (1 - scale * n^{-exponent}), n >= start
/// Both satisfy the Blaschke condition with an explicit tail.
struct ZeroRule {
  enum class Kind { Geometric, Power };
  Kind kind = Kind::Geometric;
  double point_turns = 0.0;
  double scale = 1.0;
  double ratio = 0.5;      // geometric only, in (0, 1)
  double exponent = 2.0;   // power only, > 1
  int start = 1;

  void validate() const;
  cplx point() const { return from_turns(point_turns); }
  /// Distance 1 - |lambda_n| (= |xi - lambda_n|).
  double gap(long n) const;
  cplx zero(long n) const { return point() * (1.0 - gap(n)); }
  /// Upper bound for the sum of gap(n) over n > last.
  double tail_mass(long last) const;
};

struct Atom {
  double angle_turns = 0.0;
  double weight = 1.0;
  cplx point() const { return from_turns(angle_turns); }
};

/// Closed arc of the circle from start to end, counterclockwise, in turns.
/// A single point has start == end.
struct Arc {
  double start_turns = 0.0;
  double end_turns = 0.0;
  bool is_point() const noexcept { return start_turns == end_turns; }
};

struct BoundarySpectrumEstimate {
  std::vector<Arc> arcs;
  bool is_exact = true;
};

/// Value with an absolute error bound.
struct Certified {
  cplx value;
  double error = 0.0;
};

class InnerFunction;

struct FiniteBlaschkeData {
  std::vector<cplx> zeros;
};
struct InfiniteBlaschkeData {
  ZeroRule rule;
};
struct AtomicSingularData {
  std::vector<Atom> atoms;
};
struct ProductData;
struct FrostmanData;

/// Inner function on the disk described symbolically. Cheap to copy;
/// immutable once built.
class InnerFunction {
 public:
  enum class Kind { FiniteBlaschke, InfiniteBlaschke, AtomicSingular, Product, FrostmanShift };

  InnerFunction();  // the constant 1 (empty finite Blaschke product)
  static InnerFunction finite_blaschke(std::vector<cplx> zeros);
  static InnerFunction infinite_blaschke(ZeroRule rule);
  static InnerFunction atomic_singular(std::vector<Atom> atoms);
  static InnerFunction product(const InnerFunction& left, const InnerFunction& right);
  /// Product of a list of factors; the empty list gives the constant 1.
  static InnerFunction product(const std::vector<InnerFunction>& factors);
  /// z (single zero at the origin).
  static InnerFunction identity() { return finite_blaschke({0.0}); }

  Kind kind() const noexcept;
  std::string tag() const;

  const FiniteBlaschkeData& as_finite() const;
  const InfiniteBlaschkeData& as_infinite() const;
  const AtomicSingularData& as_atomic() const;
  const ProductData& as_product() const;
  const FrostmanData& as_frostman() const;

  /// Value at |z| < 1 with error bound. Finite variants give bounds near
  /// machine precision; infinite Blaschke products are truncated adaptively
  /// until the certified bound is below `target` (PartialResultError when
  /// that is impossible at z).
  Certified eval(cplx z, double target = 1e-8) const;
  cplx operator()(cplx z) const { return eval(z).value; }
  /// Value at a point of the circle (|xi| = 1 within 1e-12) away from the
  /// boundary spectrum; DomainError on the spectrum.
  Certified eval_boundary(cplx xi, double target = 1e-8) const;

  /// True when the function is a finite Blaschke product up to a unimodular
  /// constant (finite products, their products and Frostman shifts).
  bool is_finite_blaschke() const;
  /// Zeros with multiplicity; DomainError when not a finite Blaschke product.
  std::vector<cplx> finite_zeros() const;
  /// Number of zeros, or nullopt for infinite degree / singular factors.
  std::optional<int> degree() const;
  /// Exact rational form for finite Blaschke products (including the
  /// unimodular constant); DomainError otherwise.
  RationalFunction as_rational() const;
  /// Radius of analyticity as a function on the plane: the nearest pole
  /// modulus for finite products, 1 for everything else.
  double analytic_radius() const;
  /// Evaluator usable beyond the disk when analytic_radius() > 1.
  AnalyticFunction as_analytic() const;

  BoundarySpectrumEstimate boundary_spectrum() const;

  nlohmann::json to_json() const;
  static InnerFunction from_json(const nlohmann::json& j);
  /// Structural equality of descriptors.
  bool same_descriptor(const InnerFunction& other) const;

 private:
  struct Node;
  explicit InnerFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  Certified eval_any(cplx z, double target, bool boundary) const;
  friend InnerFunction frostman_shift(const InnerFunction& u, cplx a);

  std::shared_ptr<const Node> node_;
};

struct ProductData {
  InnerFunction left;
  InnerFunction right;
};
struct FrostmanData {
  InnerFunction base;
  cplx a;
};

/// u_a = (u - a) / (1 - conj(a) u). a = 0 returns u itself.
InnerFunction frostman_shift(const InnerFunction& u, cplx a);

/// Single Blaschke factor (|l|/l)(l - z)/(1 - conj(l) z); z when l = 0.
cplx blaschke_factor(cplx lambda, cplx z);

/// If v = u * q structurally (matching non-finite factors by descriptor and
/// subtracting finite zero multisets within 1e-12), returns q.
std::optional<InnerFunction> divide(const InnerFunction& v, const InnerFunction& u);

/// True when every arc of `small` lies inside some arc of `big` (within tol turns).
bool spectrum_contains(const BoundarySpectrumEstimate& big, const BoundarySpectrumEstimate& small,
                       double tol = 1e-12);
/// True when no arc of a meets an arc of b.
bool spectra_disjoint(const BoundarySpectrumEstimate& a, const BoundarySpectrumEstimate& b,
                      double tol = 1e-12);

struct SublevelReport {
  bool contained = true;
  double eps_u = 0.0;
  double eps_v = 0.0;
  std::size_t points_checked = 0;
  std::size_t points_in_v_sublevel = 0;
  std::size_t witness_count = 0;
  std::size_t skipped = 0;
  std::optional<cplx> witness;
  double witness_abs_u = 0.0;
  double witness_abs_v = 0.0;
  nlohmann::json grid;
};

/// Grid check of {|v| < eps_v} within {|u| < eps_u}; the witness is the first
/// violating grid point in grid order.
SublevelReport sublevel_contained(const InnerFunction& u, const InnerFunction& v, double eps_u,
                                  double eps_v, const DiskGrid& grid);

nlohmann::json to_json(const BoundarySpectrumEstimate& s);
nlohmann::json to_json(const SublevelReport& r);

}  // namespace modelmult
