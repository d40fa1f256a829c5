#include <doctest.h>

#include <cmath>

#include "modelmult/errors.hpp"
#include "modelmult/modelspace.hpp"
#include "random_inputs.hpp"

using namespace modelmult;
using modelmult::testing::Draw;

TEST_CASE("kernel norm formula against quadrature") {
  Draw d(21);
  for (int trial = 0; trial < 40; ++trial) {
    const InnerFunction u = InnerFunction::finite_blaschke(d.disk_points(d.integer(1, 6), 0.9));
    const cplx l = d.disk(0.9);
    CHECK(std::abs(kernel_norm_sq(u, l) - kernel_norm_sq_quadrature(u, l)) < 1e-9);
  }
  const InnerFunction s = InnerFunction::atomic_singular({{0.0, 1.0}});
  const cplx l(0.3, 0.2);
  CHECK(kernel_norm_sq(s, l) ==
        doctest::Approx((1.0 - std::norm(s(l))) / (1.0 - std::norm(l))).epsilon(1e-14));
}

TEST_CASE("kernels reproduce model space elements") {
  Draw d(22);
  const InnerFunction u = InnerFunction::finite_blaschke(d.disk_points(5, 0.85));
  const ModelSpaceBasis b(u);
  CHECK(b.dimension() == 5);
  CHECK(b.orthogonality_residual() < 1e-12);
  for (const AnalyticFunction& f : b.analytic_elements()) {
    const cplx l = d.disk(0.8);
    const AnalyticFunction k = KernelFunction(u, l).as_analytic();
    CHECK(std::abs(hardy_inner(f, k) - f(l)) < 1e-11);
  }
  const CMatrix g = b.gram();
  CHECK((g - g.adjoint()).norm() < 1e-12);
  CHECK(Eigen::SelfAdjointEigenSolver<CMatrix>(g).eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("interpolation in a model space") {
  const std::vector<cplx> zeros = {0.1, cplx(0.3, 0.4), cplx(-0.5, 0.1), cplx(0.0, -0.6)};
  const InnerFunction u = InnerFunction::finite_blaschke(zeros);
  const std::vector<cplx> nodes = {0.0, 0.5, cplx(0.0, 0.5)};
  const std::vector<cplx> values = {1.0, cplx(0.0, 2.0), -1.0};
  const Interpolant f = interpolate(u, nodes, values);
  for (std::size_t i = 0; i < nodes.size(); ++i) CHECK(std::abs(f(nodes[i]) - values[i]) < 1e-12);
  CHECK(f.max_residual < 1e-12);
  // the rational form agrees with the kernel expansion and lies in K_u
  Draw d(23);
  for (int i = 0; i < 10; ++i) {
    const cplx z = d.disk(0.95);
    CHECK(std::abs(f.rational(z) - f(z)) < 1e-11);
  }
  const AnalyticFunction ua = u.as_analytic(), fa = f.as_analytic();
  for (int m = 0; m < 8; ++m) {
    const AnalyticFunction t{[ua, m](cplx z) { return ua(z) * std::pow(z, m); }, ua.radius};
    CHECK(std::abs(hardy_inner(fa, t)) < 1e-11);
  }
  CHECK_THROWS_AS(interpolate(u, {0.1, 0.2, 0.3, 0.4, 0.5}, {1, 1, 1, 1, 1}), DomainError);
  CHECK_THROWS_AS(interpolate(u, {0.1, 0.1}, {1, 1}), DomainError);
}

TEST_CASE("nearly coincident nodes are reported as ill-conditioned") {
  const InnerFunction u = InnerFunction::finite_blaschke({0.0, 0.5, 0.9});
  CHECK_THROWS_AS(interpolate(u, {0.3, 0.3 + 1e-9}, {1.0, 2.0}), IllConditionedError);
}

TEST_CASE("Crofoot transform is unitary onto the shifted model space") {
  Draw d(24);
  for (int trial = 0; trial < 10; ++trial) {
    const InnerFunction u = InnerFunction::finite_blaschke(d.disk_points(d.integer(1, 6), 0.9));
    const cplx a = d.disk(0.9);
    const ModelSpaceBasis b(u);
    std::vector<AnalyticFunction> before = b.analytic_elements(), after, after_rational;
    for (const auto& f : before) after.push_back(crofoot_transform(u, a, f));
    for (const auto& e : b.elements()) after_rational.push_back(AnalyticFunction::from(crofoot_transform(u, a, e)));
    const CMatrix g0 = gram_matrix(before), g1 = gram_matrix(after), g2 = gram_matrix(after_rational);
    CHECK((g0 - g1).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((g0 - g2).cwiseAbs().maxCoeff() < 1e-8);
    // images lie in K_{u_a}
    const AnalyticFunction ua = frostman_shift(u, a).as_analytic();
    for (const auto& f : after_rational) {
      for (int m = 0; m < 4; ++m) {
        const AnalyticFunction t{[ua, m](cplx z) { return ua(z) * std::pow(z, m); }, ua.radius};
        CHECK(std::abs(hardy_inner(f, t)) < 1e-9);
      }
    }
  }
  CHECK_THROWS_AS(crofoot_transform(InnerFunction::identity(), 1.0, RationalFunction()), DomainError);
}
