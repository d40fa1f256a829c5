#include "modelmult/numerics.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "modelmult/errors.hpp"

namespace modelmult {

double to_turns(cplx point) {
  double t = std::arg(point) / kTwoPi;
  if (t < 0.0) t += 1.0;
  if (t >= 1.0) t -= 1.0;
  return t;
}

AnalyticFunction AnalyticFunction::from(const RationalFunction& r) {
  return {[r](cplx z) { return r(z); }, r.pole_radius()};
}

AnalyticFunction AnalyticFunction::constant(cplx c) {
  return {[c](cplx) { return c; }, std::numeric_limits<double>::infinity()};
}

AnalyticFunction operator*(const AnalyticFunction& a, const AnalyticFunction& b) {
  return {[fa = a.fn, fb = b.fn](cplx z) { return fa(z) * fb(z); }, std::min(a.radius, b.radius)};
}

CircleQuadrature::CircleQuadrature(int n_points) : n_(n_points) {
  if (n_points <= 0) throw DomainError("circle quadrature needs a positive node count");
}

std::vector<cplx> CircleQuadrature::nodes() const {
  std::vector<cplx> out(static_cast<std::size_t>(n_));
  for (int k = 0; k < n_; ++k) out[static_cast<std::size_t>(k)] = node(k);
  return out;
}

cplx CircleQuadrature::integrate(const std::function<cplx(cplx)>& f) const {
  cplx acc{};
  for (int k = 0; k < n_; ++k) acc += f(node(k));
  return acc / static_cast<double>(n_);
}

cplx CircleQuadrature::inner(const std::function<cplx(cplx)>& f,
                             const std::function<cplx(cplx)>& g) const {
  cplx acc{};
  for (int k = 0; k < n_; ++k) {
    const cplx z = node(k);
    acc += f(z) * std::conj(g(z));
  }
  return acc / static_cast<double>(n_);
}

int nodes_for_radius(double radius, int min_nodes) {
  constexpr int kMaxNodes = 1 << 22;
  if (!(radius > 1.0)) throw DomainError("quadrature needs analyticity beyond the unit circle");
  if (std::isinf(radius)) return min_nodes;
  const double n = std::ceil(38.0 / std::log(radius));
  if (n > kMaxNodes) {
    throw DomainError("singularity too close to the unit circle for trapezoid quadrature");
  }
  int nodes = std::max(min_nodes, static_cast<int>(n));
  return (nodes + 7) / 8 * 8;
}

cplx FourierCoefficients::at(int m) const {
  if (m < -n || m > n) throw DomainError("Fourier index out of range");
  return values[static_cast<std::size_t>(m + n)];
}

FourierCoefficients fourier_coefficients(const std::function<cplx(cplx)>& f, int n) {
  if (n < 1) throw DomainError("fourier_coefficients needs n >= 1");
  const int big_n = 8 * n;
  std::vector<cplx> samples(static_cast<std::size_t>(big_n));
  for (int k = 0; k < big_n; ++k) {
    const cplx z = from_turns(static_cast<double>(k) / big_n);
    const cplx v = f(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream msg;
      msg << "non-finite boundary value at node " << k << " (angle " << k << "/" << big_n
          << " turns)";
      throw EvaluationError(msg.str());
    }
    samples[static_cast<std::size_t>(k)] = v;
  }
  FourierCoefficients out;
  out.n = n;
  out.nodes = big_n;
  out.values.resize(static_cast<std::size_t>(2 * n + 1));
  for (int m = -n; m <= n; ++m) {
    cplx acc{};
    for (int k = 0; k < big_n; ++k) {
      // Reduce the phase index exactly before converting to an angle.
      const long idx = (static_cast<long>(m) * k) % big_n;
      acc += samples[static_cast<std::size_t>(k)] * from_turns(-static_cast<double>(idx) / big_n);
    }
    out.values[static_cast<std::size_t>(m + n)] = acc / static_cast<double>(big_n);
  }
  return out;
}

Nullspace nullspace(const CMatrix& matrix, double tol) {
  if (matrix.rows() == 0 || matrix.cols() == 0) throw DomainError("nullspace of an empty matrix");
  if (!(tol > 0.0)) throw DomainError("nullspace tolerance must be positive");
  if (!matrix.allFinite()) throw DomainError("nullspace of a matrix with non-finite entries");
  Eigen::JacobiSVD<CMatrix> svd(matrix, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < matrix.cols(); ++i) {
    const bool below = i >= s.size() || s(i) <= tol * smax;
    if (below) cols.push_back(i);
  }
  Nullspace out;
  out.dimension = static_cast<int>(cols.size());
  out.singular_values = s;
  out.tolerance = tol;
  out.basis.resize(matrix.cols(), out.dimension);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    out.basis.col(static_cast<Eigen::Index>(j)) = svd.matrixV().col(cols[j]);
  }
  return out;
}

double condition_number(const CMatrix& matrix) {
  Eigen::JacobiSVD<CMatrix> svd(matrix);
  const Eigen::VectorXd& s = svd.singularValues();
  if (s.size() == 0) return std::numeric_limits<double>::infinity();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

cplx hardy_inner(const AnalyticFunction& f, const AnalyticFunction& g) {
  if (f.extends_across_circle() && g.extends_across_circle()) {
    const int n = nodes_for_radius(std::min(f.radius, g.radius));
    return CircleQuadrature(n).inner(f.fn, g.fn);
  }
  if (g.extends_across_circle() && !f.extends_across_circle()) {
    return std::conj(hardy_inner(g, f));
  }
  if (!f.extends_across_circle()) {
    throw DomainError("boundary pairing needs one factor analytic across the unit circle");
  }
  const double rho = std::max(1.0 / std::sqrt(f.radius), 0.8);
  const int n = nodes_for_radius(1.0 / rho);
  const CircleQuadrature q(n);
  cplx acc{};
  for (int k = 0; k < n; ++k) {
    const cplx xi = q.node(k);
    acc += f(xi / rho) * std::conj(g(rho * xi));
  }
  return acc / static_cast<double>(n);
}

cplx adaptive_boundary_inner(const std::function<cplx(cplx)>& f,
                             const std::function<cplx(cplx)>& g, double tol, int start_nodes,
                             int max_nodes) {
  int n = start_nodes;
  cplx sum{};
  for (int k = 0; k < n; ++k) {
    const cplx z = from_turns(static_cast<double>(k) / n);
    sum += f(z) * std::conj(g(z));
  }
  cplx previous = sum / static_cast<double>(n);
  while (2 * n <= max_nodes) {
    // The doubled rule reuses every old node; only the odd ones are new.
    for (int k = 0; k < n; ++k) {
      const cplx z = from_turns((2.0 * k + 1.0) / (2.0 * n));
      sum += f(z) * std::conj(g(z));
    }
    n *= 2;
    const cplx current = sum / static_cast<double>(n);
    if (std::abs(current - previous) <= tol * std::max(1.0, std::abs(current))) return current;
    previous = current;
  }
  throw EvaluationError("adaptive boundary quadrature did not converge within " +
                        std::to_string(max_nodes) + " nodes");
}

}  // namespace modelmult
