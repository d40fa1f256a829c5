#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "modelmult/grid.hpp"
#include "modelmult/inner.hpp"
#include "modelmult/modelspace.hpp"
#include "modelmult/numerics.hpp"

namespace modelmult {

/// Multipliers from K_u to K_v for finite Blaschke products with zeros
/// a_1..a_m (u) and b_1..b_n (v):
///   q(z) prod(1 - conj(a_i) z) / prod(1 - conj(b_j) z),  deg q <= n - m.
struct MultiplierBasis {
  std::vector<cplx> u_zeros;
  std::vector<cplx> v_zeros;
  std::vector<RationalFunction> elements;  // q = z^k, common factors cancelled
  int cancelled_pairs = 0;

  int dimension() const noexcept { return static_cast<int>(elements.size()); }
};

MultiplierBasis multiplier_basis(const std::vector<cplx>& u_zeros, const std::vector<cplx>& v_zeros);

/// ker T_{conj(z v) u} computed from u phi in K_{zv}: numerators p of degree
/// <= n that vanish at the zeros of u (with multiplicity), divided by u.
struct ToeplitzKernel {
  int dimension = 0;
  std::vector<RationalFunction> basis;
  Eigen::VectorXd singular_values;
  double tolerance = kDefaultNullspaceTolerance;
  double max_division_remainder = 0.0;
};

ToeplitzKernel toeplitz_kernel_dim(const std::vector<cplx>& u_zeros, const std::vector<cplx>& v_zeros,
                                   double tol = kDefaultNullspaceTolerance);

struct CarlesonReport {
  std::string quantity;
  double sup_value = 0.0;
  cplx argmax;
  std::string verdict;  // "bounded-on-grid" or "growth-detected"
  std::vector<double> ray_radii;
  std::vector<double> ray_values;
  GrowthAssessment growth;
  GrowthRule rule;
  std::size_t samples = 0;
  std::size_t skipped = 0;
  std::vector<std::string> notes;
  nlohmann::json grid;
};

/// sup over the grid of |phi|^2 (1 - |u|^2) / (1 - |v|^2). Points with
/// |v| >= 1 - 1e-14 are skipped with a note.
CarlesonReport necessary_condition_sup(const std::function<cplx(cplx)>& phi, const InnerFunction& u,
                                       const InnerFunction& v, const DiskGrid& grid,
                                       const GrowthRule& rule = {});

/// sup over the grid of (1 - |u(l)|^2) * Poisson integral of |phi|^2 at l.
/// The base quadrature is refined per point to at least
/// max(40 / (1 - |l|), 40 / (radius_phi - 1)) nodes by doubling.
CarlesonReport cohn_carleson_sup(const AnalyticFunction& phi, const InnerFunction& u,
                                 const DiskGrid& grid, const CircleQuadrature& quad,
                                 const GrowthRule& rule = {});

struct MembershipReport {
  bool member = false;
  double max_residual = 0.0;   // relative: |<phi f, v z^t>| / ||phi f||
  double tolerance = 1e-8;
  int tests = 0;
  std::string method;
  nlohmann::json details = nlohmann::json::object();
};

/// phi K_u within K_v for finite Blaschke u, v: phi times every basis element
/// of K_u is orthogonal to v z^t, t = 0..2 deg v.
MembershipReport membership_check(const AnalyticFunction& phi, const InnerFunction& u,
                                  const InnerFunction& v, double tol = 1e-8);

/// Sampled version for general u, v: phi k_lambda^u against v z^t,
/// t = 0..max_power, for each lambda in `points`. Needs u finite or v = u q
/// structurally (NotImplementedError otherwise).
MembershipReport membership_spot_check(const AnalyticFunction& phi, const InnerFunction& u,
                                       const InnerFunction& v, const std::vector<cplx>& points,
                                       int max_power, double tol = 1e-6);

struct OuterFactorReport {
  std::vector<cplx> inner_zeros;
  RationalFunction outer;
  std::optional<bool> phi_member;
  std::optional<bool> outer_member;
  bool consistent = true;
};

/// Splits rational phi = B F with B the Blaschke product over phi's zeros in
/// the disk. Zeros on the circle or poles in the closed disk raise DomainError.
/// When u and v are given, membership of phi and F is checked.
OuterFactorReport outer_factor_check(const RationalFunction& phi,
                                     const std::optional<InnerFunction>& u = std::nullopt,
                                     const std::optional<InnerFunction>& v = std::nullopt);

nlohmann::json to_json(const MultiplierBasis& b);
nlohmann::json to_json(const ToeplitzKernel& k);
nlohmann::json to_json(const CarlesonReport& r);
nlohmann::json to_json(const MembershipReport& r);
nlohmann::json to_json(const OuterFactorReport& r);

}  // namespace modelmult
