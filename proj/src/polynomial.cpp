#include "modelmult/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "modelmult/errors.hpp"

namespace modelmult {

namespace {

void check_degree(std::size_t size) {
  if (size > static_cast<std::size_t>(Polynomial::kMaxDegree) + 1) {
    throw DomainError("polynomial degree " + std::to_string(size - 1) + " exceeds limit " +
                      std::to_string(Polynomial::kMaxDegree));
  }
}

}  // namespace

Polynomial::Polynomial(std::vector<cplx> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
  check_degree(coeffs_.size());
}

Polynomial Polynomial::constant(cplx c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(int degree, cplx c) {
  if (degree < 0) throw DomainError("negative monomial degree");
  std::vector<cplx> v(static_cast<std::size_t>(degree) + 1, 0.0);
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(std::span<const cplx> roots) {
  check_degree(roots.size() + 1);
  std::vector<cplx> c{1.0};
  c.reserve(roots.size() + 1);
  for (const cplx r : roots) {
    c.push_back(0.0);
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -r * c[0];
  }
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
}

cplx Polynomial::coefficient(int k) const noexcept {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return {};
  return coeffs_[static_cast<std::size_t>(k)];
}

cplx Polynomial::operator()(cplx z) const noexcept {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<cplx> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

cplx Polynomial::derivative_at(cplx z, int order) const {
  Polynomial p = *this;
  for (int r = 0; r < order; ++r) p = p.derivative();
  return p(z);
}

std::vector<cplx> Polynomial::roots() const {
  const int n = degree();
  if (n <= 0) return {};
  // Zero roots split off exactly; the companion matrix handles the rest.
  int low = 0;
  while (coeffs_[static_cast<std::size_t>(low)] == cplx{}) ++low;
  std::vector<cplx> out(static_cast<std::size_t>(low), cplx{});
  const int m = n - low;
  if (m == 0) return out;
  const cplx lead = coeffs_.back();
  if (m == 1) {
    out.push_back(-coeffs_[static_cast<std::size_t>(low)] / lead);
    return out;
  }
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < m; ++i) {
    companion(i, m - 1) = -coeffs_[static_cast<std::size_t>(low + i)] / lead;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw EvaluationError("companion eigenvalue solve failed");
  const Polynomial dp = derivative();
  for (int i = 0; i < m; ++i) {
    cplx r = solver.eigenvalues()(i);
    for (int it = 0; it < 3; ++it) {
      const cplx d = dp(r);
      if (std::abs(d) == 0.0) break;
      const cplx step = (*this)(r) / d;
      if (!std::isfinite(std::abs(step))) break;
      r -= step;
    }
    out.push_back(r);
  }
  return out;
}

Polynomial::Division Polynomial::divide(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw DomainError("polynomial division by zero");
  const int dn = divisor.degree();
  if (degree() < dn) return {Polynomial{}, *this};
  std::vector<cplx> rem = coeffs_;
  std::vector<cplx> quo(static_cast<std::size_t>(degree() - dn) + 1, 0.0);
  const cplx lead = divisor.leading();
  for (int k = degree() - dn; k >= 0; --k) {
    const cplx q = rem[static_cast<std::size_t>(k + dn)] / lead;
    quo[static_cast<std::size_t>(k)] = q;
    for (int j = 0; j <= dn; ++j) {
      rem[static_cast<std::size_t>(k + j)] -= q * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
  }
  rem.resize(static_cast<std::size_t>(dn));
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(cplx c) {
  for (auto& x : coeffs_) x *= c;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  check_degree(a.coeffs_.size() + b.coeffs_.size() - 1);
  std::vector<cplx> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial reflected_product(std::span<const cplx> points) {
  Polynomial p = Polynomial::constant(1.0);
  for (const cplx a : points) p = p * Polynomial({1.0, -std::conj(a)});
  return p;
}

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
}

double RationalFunction::pole_radius() const {
  double r = std::numeric_limits<double>::infinity();
  for (const cplx p : poles()) r = std::min(r, std::abs(p));
  return r;
}

bool RationalFunction::analytic_on_closed_disk(double margin) const {
  return pole_radius() > 1.0 + margin;
}

RationalFunction& RationalFunction::operator*=(cplx c) {
  num_ *= c;
  return *this;
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}

}  // namespace modelmult
