#pragma once

#include <complex>
#include <span>
#include <vector>

namespace modelmult {

using cplx = std::complex<double>;

/// Complex polynomial in the monomial basis, coefficients in ascending degree.
///
/// The representation is trimmed: the leading stored coefficient is nonzero
/// unless the polynomial is zero, in which case no coefficients are stored
/// and `degree()` returns -1 (standing in for -infinity). Degrees above
/// `kMaxDegree` are refused with a DomainError.
class Polynomial {
 public:
  static constexpr int kMaxDegree = 512;

  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coefficients);
  static Polynomial constant(cplx c);
  static Polynomial monomial(int degree, cplx c = 1.0);
  /// Monic polynomial with exactly the given roots, repeated by multiplicity.
  static Polynomial from_roots(std::span<const cplx> roots);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<cplx>& coefficients() const noexcept { return coeffs_; }
  cplx coefficient(int k) const noexcept;
  cplx leading() const noexcept { return coeffs_.empty() ? cplx{} : coeffs_.back(); }

  cplx operator()(cplx z) const noexcept;
  Polynomial derivative() const;
  /// r-th derivative evaluated at z.
  cplx derivative_at(cplx z, int order) const;

  /// Roots via companion-matrix eigenvalues, each polished by Newton steps.
  std::vector<cplx> roots() const;

  /// Long division: *this = quotient * divisor + remainder.
  struct Division;
  Division divide(const Polynomial& divisor) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(cplx c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, cplx c) { return a *= c; }
  friend Polynomial operator*(cplx c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  void trim();
  std::vector<cplx> coeffs_;
};

struct Polynomial::Division {
  Polynomial quotient;
  Polynomial remainder;
};

/// Product of factors (1 - conj(a) z) over the given points.
Polynomial reflected_product(std::span<const cplx> points);

/// Quotient numerator/denominator of polynomials.
class RationalFunction {
 public:
  RationalFunction() : num_(Polynomial::constant(0.0)), den_(Polynomial::constant(1.0)) {}
  RationalFunction(Polynomial numerator, Polynomial denominator);
  static RationalFunction polynomial(Polynomial p) {
    return {std::move(p), Polynomial::constant(1.0)};
  }

  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }

  cplx operator()(cplx z) const noexcept { return num_(z) / den_(z); }

  std::vector<cplx> poles() const { return den_.roots(); }
  /// Smallest pole modulus; +infinity for polynomials.
  double pole_radius() const;
  /// True when every pole has modulus > 1 + margin (an H^2 function of the disk).
  bool analytic_on_closed_disk(double margin = 1e-12) const;

  RationalFunction& operator*=(cplx c);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);

 private:
  Polynomial num_;
  Polynomial den_;
};

}  // namespace modelmult
