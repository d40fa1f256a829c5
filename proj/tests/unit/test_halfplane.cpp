#include <doctest.h>

#include <cmath>

#include "modelmult/errors.hpp"
#include "modelmult/halfplane.hpp"
#include "modelmult/multiplier.hpp"
#include "random_inputs.hpp"

using namespace modelmult;
using modelmult::testing::Draw;

TEST_CASE("Cayley map sends the line to the circle") {
  Draw d(51);
  for (int i = 0; i < 100; ++i) {
    const double x = std::tan(kPi * (d.unit() - 0.5));
    CHECK(std::abs(std::abs(cayley(x)) - 1.0) < 1e-14);
  }
  for (int i = 0; i < 20; ++i) {
    const cplx z(d.uniform(-5, 5), d.uniform(0, 5));
    CHECK(std::abs(cayley_inverse(cayley(z)) - z) < 1e-12 * (1.0 + std::norm(z)));
  }
  CHECK_THROWS_WITH_AS(cayley(cplx(0.0, -1.0)), doctest::Contains("pole"), DomainError);
  CHECK_THROWS_AS(cayley(cplx(0.0, -0.5)), DomainError);
}

TEST_CASE("the transfer operator is isometric") {
  // <U z^j, U z^k> over the line equals <z^j, z^k> on the circle
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      const auto f = transfer([j](cplx w) { return std::pow(w, j); });
      const auto g = transfer([k](cplx w) { return std::pow(w, k); });
      const LineIntegral r = line_inner(f, g);
      CHECK(std::abs(r.value - (j == k ? 1.0 : 0.0)) < 1e-6 + r.tail_bound);
      CHECK(r.tail_bound < 1e-6);
    }
  }
}

TEST_CASE("dyadic products against long direct products") {
  for (const cplx z : {cplx(2.0, 1.0), cplx(-7.0, 3.0), cplx(100.0, 0.5)}) {
    const ProductValue e1 = eval_product(CanonicalProduct::e1(), z);
    cplx direct = 1.0;
    for (int n = 1; n <= 80; ++n) direct *= 1.0 + z / cplx(0.0, std::ldexp(1.0, n));
    CHECK(std::abs(e1.value - direct) <= (e1.relative_error + 1e-14) * std::abs(direct));
    const ProductValue e2 = eval_product(CanonicalProduct::e2_tilde(), z);
    cplx d2 = std::pow(z + cplx(0.0, 0.5), 3);
    for (int n = 1; n <= 80; ++n) d2 *= 1.0 - z / cplx(std::ldexp(1.0, n), -std::ldexp(1.0, -2 * n));
    CHECK(std::abs(e2.value - d2) <= (e2.relative_error + 1e-14) * std::abs(d2));
  }
}

TEST_CASE("E_delta with tail correction against a long direct product") {
  const double delta = 0.15;
  const CanonicalProduct e = CanonicalProduct::e_delta(delta);
  for (const cplx z : {cplx(0.5, 0.0), cplx(3.3, 0.7), cplx(-2.1, 1.5)}) {
    const ProductValue p = eval_product(e, z, 1e-9);
    CHECK(p.relative_error <= 1e-9);
    // direct product: remaining log-tail is about |z|^2 / K
    const long k_direct = 2000000;
    cplx direct = z + cplx(0.0, 1.0);
    for (long k = 1; k <= k_direct; ++k) {
      const cplx a(k - delta, -std::pow(static_cast<double>(k), -4.0 * delta));
      direct *= (1.0 - z / a) * (1.0 + z / std::conj(a));
    }
    const double tail = 2.0 * (std::norm(z) + 2.0 * std::abs(z)) / static_cast<double>(k_direct);
    CHECK(std::abs(p.value - direct) <= tail * std::abs(direct));
  }
}

TEST_CASE("doubling a fixed truncation changes the value by less than the reported bound") {
  const CanonicalProduct e = CanonicalProduct::e_delta(0.1);
  for (const cplx z : {cplx(1.0, 0.0), cplx(4.5, 1.0), cplx(-10.0, 2.0)}) {
    for (const long k : {200L, 1000L}) {
      const ProductValue a = eval_product(e, z, 1e-9, k), b = eval_product(e, z, 1e-9, 2 * k);
      CHECK(std::abs(a.value - b.value) <= a.relative_error * std::abs(b.value));
    }
  }
  const CanonicalProduct q = CanonicalProduct::e_quarter();
  const ProductValue a = eval_product(q, 2.0, 1e-9, 500L), b = eval_product(q, 2.0, 1e-9, 1000L);
  CHECK(std::abs(a.value - b.value) <= a.relative_error * std::abs(b.value));
  CHECK_THROWS_AS(CanonicalProduct::e_delta(0.3), DomainError);
  CHECK_THROWS_AS(eval_product(e, cplx(1e7, 0.0)), PartialResultError);
}

TEST_CASE("distance to the zero set against brute force") {
  for (const double delta : {0.1, 0.2}) {
    const auto zeros = CanonicalProduct::e_delta(delta).zeros(400);
    Draw d(52);
    for (int i = 0; i < 200; ++i) {
      const double x = d.uniform(-300, 300);
      double best = 1e300;
      for (const cplx z : zeros) best = std::min(best, std::abs(z - x));
      CHECK(distance_to_zeros(delta, x) == doctest::Approx(best).epsilon(1e-14));
    }
  }
}

TEST_CASE("Lyubarskii-Seip ratio refuses points on zero real parts") {
  CHECK_THROWS_AS(lyubarskii_seip_ratio(0.1, {0.9}), DomainError);
  const LsRatioReport r = lyubarskii_seip_ratio(0.1, zero_midpoints(0.1, 5));
  CHECK(r.samples.size() == 5);
  CHECK(r.min_ratio > 0.0);
}

TEST_CASE("Ahern-Clark sums and tail rules") {
  ZeroSequence s;
  s.zeros = {cplx(1.0, 0.5), cplx(-2.0, 0.25)};
  CHECK_THROWS_AS(ahern_clark_at_infinity(s), DomainError);
  s.tail = TailRule{};
  const auto finite = ahern_clark_at_infinity(s);
  CHECK(finite.verdict == "finite");
  CHECK(finite.total == doctest::Approx(0.75));
  s.tail = TailRule{TailRule::Kind::Geometric, 1.0, 0.5, 3};
  CHECK(ahern_clark_at_infinity(s).total == doctest::Approx(0.75 + 0.25));
  s.tail = TailRule{TailRule::Kind::Geometric, 1.0, 1.0, 3};
  CHECK(ahern_clark_at_infinity(s).verdict == "divergent");

  const auto e1 = ahern_clark_at_infinity(conjugate_zero_sequence(CanonicalProduct::e1(), 20));
  CHECK(e1.verdict == "divergent");
  const auto e2 = ahern_clark_at_infinity(conjugate_zero_sequence(CanonicalProduct::e2_tilde(), 30));
  CHECK(e2.verdict == "finite");
  CHECK(std::abs(e2.total - (1.0 / 3.0 + 1.5)) < 1e-15);
  const auto back = zero_sequence_from_json(to_json(conjugate_zero_sequence(CanonicalProduct::e2_tilde(), 3)));
  CHECK(back.zeros.size() == 6);
  CHECK(back.tail->ratio == 0.25);
}

TEST_CASE("E1 over E2_tilde on half annuli") {
  const cplx q = eval_product(CanonicalProduct::e1(), cplx(0.0, 2.0)).value /
                 eval_product(CanonicalProduct::e2_tilde(), cplx(0.0, 2.0)).value;
  CHECK(q.real() == doctest::Approx(-0.1734).epsilon(1e-3));
  CHECK(q.imag() == doctest::Approx(-0.0180).epsilon(1e-2));
  const AnnulusSup a1 = e1_e2_annulus_sup(1, 9, 17), a6 = e1_e2_annulus_sup(6, 9, 17);
  CHECK(std::isfinite(a1.sup));
  CHECK(a6.sup < a1.sup);
}

TEST_CASE("transferred multipliers pass the half-plane membership check") {
  const std::vector<cplx> uz = {0.3, cplx(-0.2, 0.4)}, vz = {0.3, cplx(-0.2, 0.4), cplx(0.1, -0.5)};
  const InnerFunction u = InnerFunction::finite_blaschke(uz), v = InnerFunction::finite_blaschke(vz);
  for (const auto& phi : multiplier_basis(uz, vz).elements) {
    double tail = 0.0;
    CHECK(halfplane_membership_residual(AnalyticFunction::from(phi), u, v, &tail) < 1e-4);
    CHECK(tail < 1e-6);
  }
  const AnalyticFunction bad{[](cplx z) { return z * z * z; }, INFINITY};
  CHECK(halfplane_membership_residual(bad, u, v) > 1e-2);
}
