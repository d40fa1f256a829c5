#include "modelmult/modelspace.hpp"

#include <Eigen/LU>
#include <cmath>

#include "modelmult/errors.hpp"
#include "modelmult/json_io.hpp"

namespace modelmult {

using nlohmann::json;

KernelFunction::KernelFunction(InnerFunction u_, cplx lambda_)
    : u(std::move(u_)), lambda(lambda_), u_lambda(u(lambda_)), u_fn(u.as_analytic()) {}

cplx KernelFunction::operator()(cplx z) const {
  return (1.0 - std::conj(u_lambda) * u_fn(z)) / (1.0 - std::conj(lambda) * z);
}

AnalyticFunction KernelFunction::as_analytic() const {
  const AnalyticFunction& ua = u_fn;
  const cplx ul = u_lambda, l = lambda;
  double radius = ua.radius;
  // The pole of 1/(1 - conj(l) z) at 1/conj(l) is removable but limits the
  // trapezoid rate through cancellation, so count it anyway.
  if (l != cplx{}) radius = std::min(radius, 1.0 / std::abs(l));
  return {[ua, ul, l](cplx z) { return (1.0 - std::conj(ul) * ua(z)) / (1.0 - std::conj(l) * z); },
          radius};
}

double kernel_norm_sq(const InnerFunction& u, cplx lambda) {
  if (!(std::abs(lambda) < 1.0)) throw DomainError("kernel point must lie in the open disk");
  const double au = std::abs(u(lambda));
  return (1.0 - au * au) / (1.0 - std::norm(lambda));
}

double kernel_norm_sq_quadrature(const InnerFunction& u, cplx lambda) {
  if (!u.is_finite_blaschke()) throw DomainError("quadrature kernel norm needs a finite Blaschke product");
  const AnalyticFunction k = KernelFunction(u, lambda).as_analytic();
  return hardy_inner(k, k).real();
}

CMatrix gram_matrix(const std::vector<AnalyticFunction>& fs) {
  const auto n = static_cast<Eigen::Index>(fs.size());
  CMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      g(i, j) = hardy_inner(fs[static_cast<std::size_t>(j)], fs[static_cast<std::size_t>(i)]);
      g(j, i) = std::conj(g(i, j));
    }
  }
  return g;
}

ModelSpaceBasis::ModelSpaceBasis(const InnerFunction& u) : u_(u), zeros_(u.finite_zeros()) {
  if (zeros_.empty()) throw DomainError("model space basis needs degree >= 1");
  const Polynomial q = reflected_product(zeros_);
  for (std::size_t k = 0; k < zeros_.size(); ++k) {
    elements_.emplace_back(Polynomial::monomial(static_cast<int>(k)), q);
  }
}

std::vector<AnalyticFunction> ModelSpaceBasis::analytic_elements() const {
  std::vector<AnalyticFunction> out;
  for (const auto& e : elements_) out.push_back(AnalyticFunction::from(e));
  return out;
}

CMatrix ModelSpaceBasis::gram() const { return gram_matrix(analytic_elements()); }

double ModelSpaceBasis::orthogonality_residual() const {
  const AnalyticFunction ua = u_.as_analytic();
  const int n = dimension();
  double worst = 0.0;
  for (const AnalyticFunction& e : analytic_elements()) {
    for (int m = 0; m <= 2 * n; ++m) {
      const AnalyticFunction test{[ua, m](cplx z) { return ua(z) * std::pow(z, m); }, ua.radius};
      worst = std::max(worst, std::abs(hardy_inner(e, test)));
    }
  }
  return worst;
}

cplx Interpolant::operator()(cplx z) const {
  cplx acc{};
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    acc += coefficients(static_cast<Eigen::Index>(j)) * kernels[j](z);
  }
  return acc;
}

AnalyticFunction Interpolant::as_analytic() const {
  return AnalyticFunction::from(rational);
}

Interpolant interpolate(const InnerFunction& u, const std::vector<cplx>& nodes,
                        const std::vector<cplx>& values) {
  if (nodes.size() != values.size()) throw DomainError("nodes and values differ in length");
  if (nodes.empty()) throw DomainError("interpolation needs at least one node");
  const std::vector<cplx> zeros = u.finite_zeros();
  if (nodes.size() > zeros.size()) {
    throw DomainError("more interpolation nodes than the dimension of the model space");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(std::abs(nodes[i]) < 1.0)) throw DomainError("interpolation node outside the disk");
    for (std::size_t j = 0; j < i; ++j) {
      if (nodes[i] == nodes[j]) throw DomainError("interpolation nodes must be distinct");
    }
  }
  const auto n = static_cast<Eigen::Index>(nodes.size());
  std::vector<KernelFunction> kernels;
  for (const cplx l : nodes) kernels.emplace_back(u, l);
  CMatrix g(n, n);
  CVector rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    rhs(i) = values[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j) {
      g(i, j) = kernels[static_cast<std::size_t>(j)](nodes[static_cast<std::size_t>(i)]);
    }
  }
  Interpolant out;
  out.u = u;
  out.nodes = nodes;
  out.values = values;
  out.kernels = kernels;
  out.condition_number = condition_number(g);
  if (!(out.condition_number <= kMaxInterpolationCondition)) {
    throw IllConditionedError("interpolation kernel matrix is ill-conditioned",
                              out.condition_number);
  }
  out.coefficients = g.fullPivLu().solve(rhs);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.max_residual = std::max(out.max_residual,
                                std::abs(out(nodes[static_cast<std::size_t>(i)]) - rhs(i)));
  }
  // Numerator p = f * prod(1 - conj(lambda) z) has degree < deg u; recover it
  // from samples at roots of unity.
  const Polynomial q = reflected_product(zeros);
  const int deg = static_cast<int>(zeros.size());
  int m = 1;
  while (m < 2 * deg) m *= 2;
  std::vector<cplx> samples(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const cplx z = from_turns(static_cast<double>(k) / m);
    samples[static_cast<std::size_t>(k)] = out(z) * q(z);
  }
  std::vector<cplx> coeffs(static_cast<std::size_t>(deg));
  for (int c = 0; c < deg; ++c) {
    cplx acc{};
    for (int k = 0; k < m; ++k) {
      acc += samples[static_cast<std::size_t>(k)] * from_turns(-static_cast<double>((c * k) % m) / m);
    }
    coeffs[static_cast<std::size_t>(c)] = acc / static_cast<double>(m);
  }
  out.rational = RationalFunction(Polynomial(coeffs), q);
  return out;
}

AnalyticFunction crofoot_transform(const InnerFunction& u, cplx a, const AnalyticFunction& f) {
  if (!(std::abs(a) < 1.0)) throw DomainError("Crofoot parameter must lie in the open disk");
  const double s = std::sqrt(1.0 - std::norm(a));
  const AnalyticFunction ua = u.as_analytic();
  double radius = std::min(f.radius, ua.radius);
  if (u.is_finite_blaschke() && a != cplx{}) {
    // 1 - conj(a) u vanishes where u = 1/conj(a), outside the closed disk.
    const RationalFunction r = u.as_rational();
    const Polynomial den = r.denominator() - std::conj(a) * r.numerator();
    for (const cplx p : den.roots()) radius = std::min(radius, std::abs(p));
  }
  return {[ua, a, s, fn = f.fn](cplx z) { return s * fn(z) / (1.0 - std::conj(a) * ua(z)); },
          radius};
}

RationalFunction crofoot_transform(const InnerFunction& u, cplx a, const RationalFunction& f) {
  if (!(std::abs(a) < 1.0)) throw DomainError("Crofoot parameter must lie in the open disk");
  const RationalFunction r = u.as_rational();
  const double s = std::sqrt(1.0 - std::norm(a));
  return {s * (f.numerator() * r.denominator()),
          f.denominator() * (r.denominator() - std::conj(a) * r.numerator())};
}

json to_json(const RationalFunction& r) {
  return {{"numerator", complex_list_to_json(r.numerator().coefficients())},
          {"denominator", complex_list_to_json(r.denominator().coefficients())},
          {"coefficient_order", "ascending"}};
}

json to_json(const ModelSpaceBasis& b) {
  json elems = json::array();
  for (const auto& e : b.elements()) elems.push_back(to_json(e));
  return {{"dimension", b.dimension()},
          {"u_zeros", complex_list_to_json(b.zeros())},
          {"elements", elems}};
}

json to_json(const Interpolant& f) {
  json coeffs = json::array();
  for (Eigen::Index i = 0; i < f.coefficients.size(); ++i) coeffs.push_back(complex_to_json(f.coefficients(i)));
  return {{"nodes", complex_list_to_json(f.nodes)},
          {"values", complex_list_to_json(f.values)},
          {"kernel_coefficients", coeffs},
          {"condition_number", f.condition_number},
          {"max_residual", f.max_residual},
          {"function", to_json(f.rational)}};
}

}  // namespace modelmult
