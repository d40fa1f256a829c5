#pragma once

#include <json.hpp>
#include <vector>

#include "modelmult/inner.hpp"
#include "modelmult/numerics.hpp"

namespace modelmult {

/// Reproducing kernel k_lambda^u(z) = (1 - conj(u(lambda)) u(z)) / (1 - conj(lambda) z).
struct KernelFunction {
  InnerFunction u;
  cplx lambda;
  cplx u_lambda;
  AnalyticFunction u_fn;

  KernelFunction(InnerFunction u, cplx lambda);
  cplx operator()(cplx z) const;
  /// Usable beyond the disk when u is a finite Blaschke product.
  AnalyticFunction as_analytic() const;
};

/// (1 - |u(lambda)|^2) / (1 - |lambda|^2).
double kernel_norm_sq(const InnerFunction& u, cplx lambda);
/// ||k_lambda^u||^2 by circle quadrature (finite Blaschke u only).
double kernel_norm_sq_quadrature(const InnerFunction& u, cplx lambda);

/// Gram matrix G_ij = <f_j, f_i> of functions analytic across the circle.
CMatrix gram_matrix(const std::vector<AnalyticFunction>& fs);

/// Basis z^k / prod(1 - conj(lambda_j) z), k = 0..n-1, of K_u for a finite
/// Blaschke product u of degree n.
class ModelSpaceBasis {
 public:
  explicit ModelSpaceBasis(const InnerFunction& u);

  const InnerFunction& u() const noexcept { return u_; }
  const std::vector<cplx>& zeros() const noexcept { return zeros_; }
  int dimension() const noexcept { return static_cast<int>(elements_.size()); }
  const std::vector<RationalFunction>& elements() const noexcept { return elements_; }
  std::vector<AnalyticFunction> analytic_elements() const;

  CMatrix gram() const;
  /// max |<e_j, u z^m>| over basis elements and m = 0..2n.
  double orthogonality_residual() const;

 private:
  InnerFunction u_;
  std::vector<cplx> zeros_;
  std::vector<RationalFunction> elements_;
};

/// f = sum_j c_j k_{node_j}^u interpolating prescribed values.
struct Interpolant {
  InnerFunction u;
  std::vector<cplx> nodes;
  std::vector<cplx> values;
  std::vector<KernelFunction> kernels;
  CVector coefficients;
  double condition_number = 0.0;
  double max_residual = 0.0;
  /// f = numerator / prod(1 - conj(lambda_j) z) over the zeros of u.
  RationalFunction rational;

  cplx operator()(cplx z) const;
  AnalyticFunction as_analytic() const;
};

constexpr double kMaxInterpolationCondition = 1e12;

/// Solves the kernel-matrix system G c = values with G_ij = k_{node_j}(node_i);
/// the result is the minimal-norm element of K_u with those values.
/// IllConditionedError when cond(G) > 1e12.
Interpolant interpolate(const InnerFunction& u, const std::vector<cplx>& nodes,
                        const std::vector<cplx>& values);

/// z -> sqrt(1 - |a|^2) f(z) / (1 - conj(a) u(z)).
AnalyticFunction crofoot_transform(const InnerFunction& u, cplx a, const AnalyticFunction& f);
/// Exact rational image for finite Blaschke u and rational f.
RationalFunction crofoot_transform(const InnerFunction& u, cplx a, const RationalFunction& f);

nlohmann::json to_json(const RationalFunction& r);
nlohmann::json to_json(const ModelSpaceBasis& b);
nlohmann::json to_json(const Interpolant& f);

}  // namespace modelmult
