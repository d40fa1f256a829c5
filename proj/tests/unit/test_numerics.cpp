#include <doctest.h>

#include <cmath>

#include "modelmult/errors.hpp"
#include "modelmult/numerics.hpp"
#include "modelmult/polynomial.hpp"
#include "random_inputs.hpp"

using namespace modelmult;
using modelmult::testing::Draw;

TEST_CASE("circle quadrature integrates trigonometric monomials exactly below n") {
  for (const int n : {1, 7, 64, 257}) {
    const CircleQuadrature q(n);
    double wsum = 0.0;
    for (int k = 0; k < n; ++k) wsum += q.weight();
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-13));
    for (int m = -(n - 1); m <= n - 1; ++m) {
      const cplx v = q.integrate([m](cplx z) { return std::pow(z, m); });
      CHECK(std::abs(v - (m == 0 ? 1.0 : 0.0)) < 1e-13);
    }
  }
  CHECK_THROWS_AS(CircleQuadrature(0), DomainError);
}

TEST_CASE("fourier coefficients of a rational function match its power series") {
  // 1/(1 - a z) = sum a^k z^k
  const cplx a(0.4, -0.3);
  const FourierCoefficients c = fourier_coefficients([a](cplx z) { return 1.0 / (1.0 - a * z); }, 12);
  for (int m = -12; m <= 12; ++m) {
    const cplx expect = m < 0 ? cplx{} : std::pow(a, m);
    CHECK(std::abs(c.at(m) - expect) < 1e-14);
  }
  CHECK_THROWS_AS(fourier_coefficients([](cplx) { return cplx(NAN, 0.0); }, 3), EvaluationError);
}

TEST_CASE("polynomial roots round trip and division") {
  Draw d(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto roots = d.disk_points(d.integer(1, 9), 0.95);
    const Polynomial p = Polynomial::from_roots(roots);
    CHECK(p.degree() == static_cast<int>(roots.size()));
    for (const cplx r : roots) CHECK(std::abs(p(r)) < 1e-12);
    const auto found = p.roots();
    REQUIRE(found.size() == roots.size());
    for (const cplx r : roots) {
      double best = 1e300;
      for (const cplx f : found) best = std::min(best, std::abs(f - r));
      CHECK(best < 1e-7);
    }
    const Polynomial q = Polynomial::from_roots(std::span<const cplx>(roots.data(), 1));
    const auto div = p.divide(q);
    CHECK((div.remainder.is_zero() || std::abs(div.remainder.coefficient(0)) < 1e-12));
    const cplx z = d.disk(1.0);
    CHECK(std::abs(div.quotient(z) * q(z) + div.remainder(z) - p(z)) < 1e-12);
  }
}

TEST_CASE("rational function evaluation agrees with numerator over denominator") {
  Draw d(3);
  const Polynomial num(std::vector<cplx>{1.0, cplx(0.5, 0.1), -0.2});
  const std::vector<cplx> poles = {cplx(1.5, 0.2), cplx(-2.0, 1.0)};
  const RationalFunction r(num, Polynomial::from_roots(poles));
  CHECK(r.analytic_on_closed_disk());
  CHECK(r.pole_radius() == doctest::Approx(std::abs(poles[0])).epsilon(1e-12));
  for (int i = 0; i < 1000; ++i) {
    const cplx z = d.disk(1.0);
    const cplx direct = num(z) / ((z - poles[0]) * (z - poles[1]));
    CHECK(std::abs(r(z) - direct) <= 1e-13 * std::max(1.0, std::abs(direct)));
  }
  const RationalFunction bad(num, Polynomial::from_roots(std::vector<cplx>{0.5}));
  CHECK_FALSE(bad.analytic_on_closed_disk());
}

TEST_CASE("nullspace finds the kernel of a rank deficient matrix") {
  CMatrix m(3, 4);
  m << 1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 0, 1;
  const Nullspace ns = nullspace(m);
  CHECK(ns.dimension == 2);
  CHECK((m * ns.basis).norm() < 1e-12);
  CHECK((ns.basis.adjoint() * ns.basis - CMatrix::Identity(2, 2)).norm() < 1e-12);
  CHECK(nullspace(CMatrix::Identity(3, 3)).dimension == 0);
  CHECK(condition_number(CMatrix::Identity(4, 4)) == doctest::Approx(1.0));
}

TEST_CASE("hardy inner product matches a brute-force trapezoid sum") {
  // f, g with poles outside the closed disk: trapezoid with many nodes is an
  // independent reference.
  const AnalyticFunction f{[](cplx z) { return (1.0 + z) / (1.0 - 0.7 * z); }, 1.0 / 0.7};
  const AnalyticFunction g{[](cplx z) { return z * z / (1.0 - cplx(0.0, 0.5) * z); }, 2.0};
  const CircleQuadrature brute(1 << 14);
  const cplx ref = brute.inner(f.fn, g.fn);
  CHECK(std::abs(hardy_inner(f, g) - ref) < 1e-13);
  CHECK(nodes_for_radius(2.0) % 8 == 0);
  CHECK(nodes_for_radius(2.0) >= 64);
  CHECK(nodes_for_radius(1.01) > nodes_for_radius(1.1));
}

TEST_CASE("dilation pairing handles a factor with a boundary singularity") {
  // <F, S> with S = exp((z+1)/(z-1)): equals F * conj(S) integrated; since F
  // is a polynomial, <z^k, S> = conj(S_k). Reference: S_k from a dilated
  // Cauchy integral on a smaller circle.
  const AnalyticFunction s{[](cplx z) { return std::exp((z + 1.0) / (z - 1.0)); }, 1.0};
  const AnalyticFunction f{[](cplx z) { return 2.0 + z * z; }, INFINITY};
  const double rho = 0.9;
  const CircleQuadrature q(4096);
  auto coeff = [&](int k) {
    return q.integrate([&](cplx xi) { return s(rho * xi) * std::pow(xi, -k); }) / std::pow(rho, k);
  };
  const cplx expect = 2.0 * std::conj(coeff(0)) + std::conj(coeff(2));
  CHECK(std::abs(hardy_inner(f, s) - expect) < 1e-10);
}
