#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "modelmult/polynomial.hpp"

namespace modelmult {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

/// e^{2 pi i t} for an angle t measured in turns.
inline cplx from_turns(double turns) { return std::polar(1.0, kTwoPi * turns); }
/// Angle of a unit-circle point in turns, normalized to [0, 1).
double to_turns(cplx point);

/// A holomorphic function of the disk together with the radius of the
/// largest centered disk on which it is known to be analytic.
///
/// radius > 1 means the function may be evaluated on (and a little beyond)
/// the unit circle; radius == 1 means only the open disk is safe.
struct AnalyticFunction {
  std::function<cplx(cplx)> fn;
  double radius = 1.0;

  cplx operator()(cplx z) const { return fn(z); }
  bool extends_across_circle() const noexcept { return radius > 1.0; }

  static AnalyticFunction from(const RationalFunction& r);
  static AnalyticFunction constant(cplx c);
};

AnalyticFunction operator*(const AnalyticFunction& a, const AnalyticFunction& b);

/// Uniform trapezoid rule for normalized arc length on the unit circle.
/// Nodes e^{2 pi i k/n}, weights 1/n; exact for e^{i m theta}, |m| < n.
class CircleQuadrature {
 public:
  explicit CircleQuadrature(int n_points);

  int size() const noexcept { return n_; }
  double weight() const noexcept { return 1.0 / n_; }
  cplx node(int k) const { return from_turns(static_cast<double>(k) / n_); }
  std::vector<cplx> nodes() const;

  /// Sum of weight * f(node) over all nodes.
  cplx integrate(const std::function<cplx(cplx)>& f) const;
  /// Boundary inner product <f, g> = integral of f conj(g) dm.
  cplx inner(const std::function<cplx(cplx)>& f, const std::function<cplx(cplx)>& g) const;

 private:
  int n_;
};

/// Node count N such that R^{-N} is below double rounding, at least `min_nodes`.
int nodes_for_radius(double radius, int min_nodes = 64);

/// Fourier coefficients c_m, m = -n..n, of a boundary trace.
struct FourierCoefficients {
  int n = 0;
  int nodes = 0;
  std::vector<cplx> values;  // values[m + n]

  cplx at(int m) const;
};

/// Coefficient m approximates the integral of f(e^{it}) e^{-imt} dm with the
/// trapezoid rule on N = 8n nodes. Throws EvaluationError naming the node on
/// a non-finite boundary value.
FourierCoefficients fourier_coefficients(const std::function<cplx(cplx)>& f, int n);

/// Numerical kernel of a dense complex matrix.
struct Nullspace {
  int dimension = 0;
  CMatrix basis;                  // orthonormal columns
  Eigen::VectorXd singular_values;
  double tolerance = 0.0;         // relative threshold used
};

constexpr double kDefaultNullspaceTolerance = 1e-8;

/// Right singular vectors whose singular value is below tol * sigma_max
/// (missing singular values of a wide matrix count as zero).
Nullspace nullspace(const CMatrix& matrix, double tol = kDefaultNullspaceTolerance);

/// 2-norm condition number (sigma_max / sigma_min); infinity when singular.
double condition_number(const CMatrix& matrix);

/// H^2 inner product <f, g> of functions on the disk.
///
/// When both extend across the circle the trapezoid rule is used with a node
/// count fixed by the smaller radius. When only f does, the dilation identity
///   <f, g> = integral of f(xi / rho) conj(g(rho xi)) dm,  rho = radius_f^{-1/2}
/// is used, which only samples g strictly inside the disk. Throws DomainError
/// when neither factor extends.
cplx hardy_inner(const AnalyticFunction& f, const AnalyticFunction& g);

/// Trapezoid inner product with doubling until successive values agree to
/// `tol` (absolute). For functions evaluable on the circle whose analytic
/// radius is unknown.
cplx adaptive_boundary_inner(const std::function<cplx(cplx)>& f,
                             const std::function<cplx(cplx)>& g, double tol = 1e-14,
                             int start_nodes = 64, int max_nodes = 1 << 22);

}  // namespace modelmult
