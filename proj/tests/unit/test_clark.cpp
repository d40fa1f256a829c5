#include <doctest.h>

#include <cmath>

#include "modelmult/clark.hpp"
#include "modelmult/errors.hpp"
#include "random_inputs.hpp"

using namespace modelmult;
using modelmult::testing::Draw;

TEST_CASE("finite Blaschke Clark atoms sit where u = 1 with weights 1/|u'|") {
  Draw d(41);
  for (int trial = 0; trial < 20; ++trial) {
    const auto zeros = d.disk_points(d.integer(1, 8), 0.95);
    const InnerFunction u = InnerFunction::finite_blaschke(zeros);
    const AtomicMeasure mu = clark_measure(u);
    REQUIRE(mu.atoms.size() == zeros.size());
    mu.validate();
    for (const auto& a : mu.atoms) {
      CHECK(std::abs(u.eval_boundary(a.point).value - 1.0) < 1e-12);
      // |u'| by a centered difference along the circle
      const double h = 1e-6;
      const double t = to_turns(a.point);
      const cplx up = (u.eval_boundary(from_turns(t + h)).value - u.eval_boundary(from_turns(t - h)).value) /
                      (2.0 * h * kTwoPi);
      CHECK(a.weight == doctest::Approx(1.0 / std::abs(up)).epsilon(1e-6));
    }
    // total mass is the Poisson integral at the origin
    const cplx u0 = u(0.0);
    CHECK(mu.listed_mass() == doctest::Approx((1.0 - std::norm(u0)) / std::norm(1.0 - u0)).epsilon(1e-10));
    const PoissonReport r = poisson_identity_residual(u, mu, d.disk_points(50, 0.9));
    CHECK(r.max_residual < 1e-10);
  }
}

TEST_CASE("single-atom singular Clark measure") {
  const InnerFunction u = InnerFunction::atomic_singular({{0.0, 1.0}});
  const AtomicMeasure mu = clark_measure(u, 200);
  CHECK(mu.atoms.size() == 401);
  for (const auto& a : mu.atoms) {
    const double n = static_cast<double>(a.index);
    CHECK(a.weight == doctest::Approx(2.0 / (4.0 * kPi * kPi * n * n + 1.0)).epsilon(1e-13));
    CHECK(std::abs(u.eval_boundary(a.point).value - 1.0) < 1e-9);
  }
  // total mass of the full measure is (1 - e^{-2}) / (1 - e^{-1})^2
  const double total = (1.0 - std::exp(-2.0)) / std::pow(1.0 - std::exp(-1.0), 2);
  CHECK(total - mu.listed_mass() >= 0.0);
  CHECK(total - mu.listed_mass() <= mu.tail_bound);
  Draw d(42);
  const PoissonReport r = poisson_identity_residual(u, mu, d.disk_points(100, 0.9));
  CHECK(r.within_tail_bound);
  // a shifted, heavier atom
  const InnerFunction w = InnerFunction::atomic_singular({{0.3, 2.5}});
  const AtomicMeasure mw = clark_measure(w, 100);
  CHECK(poisson_identity_residual(w, mw, d.disk_points(50, 0.9)).within_tail_bound);
  CHECK_THROWS_AS(clark_measure(InnerFunction::atomic_singular({{0.0, 1.0}, {0.5, 1.0}})), NotImplementedError);
}

TEST_CASE("absolute continuity verdicts") {
  const InnerFunction u = InnerFunction::finite_blaschke({0.5, cplx(0.0, 0.3)});
  const AtomicMeasure su = clark_measure(u);
  AtomicMeasure sv = su;
  for (auto& a : sv.atoms) a.weight *= 0.5;
  CHECK(absolute_continuity_multiplier(su, sv).verdict == "multiplier-candidate");
  CHECK(absolute_continuity_multiplier(su, sv).h_sup == doctest::Approx(2.0));
  AtomicMeasure tiny = sv;
  tiny.atoms[0].weight = 1e-15;
  CHECK(absolute_continuity_multiplier(su, tiny).verdict == "unbounded-density");
  AtomicMeasure moved = sv;
  moved.atoms[0].point = from_turns(to_turns(moved.atoms[0].point) + 0.01);
  CHECK(absolute_continuity_multiplier(su, moved).verdict == "not-absolutely-continuous");
  moved.tail_bound = 0.1;
  CHECK(absolute_continuity_multiplier(su, moved).verdict == "undetermined");

  const AtomicMeasure s1 = clark_measure(InnerFunction::atomic_singular({{0.0, 1.0}}), 50);
  CHECK(absolute_continuity_multiplier(s1, s1).verdict == "undetermined");
  CHECK(absolute_continuity_multiplier(s1, s1, 1.0).verdict == "multiplier-candidate");
  const AtomicMeasure even = reweighted(s1, [](long n) { return n % 2 == 0 ? 1.0 : 0.0; }, 1.0);
  CHECK(even.atoms.size() == 51);
  CHECK(absolute_continuity_multiplier(s1, even).verdict == "undetermined");
  const AtomicMeasure even_closed = reweighted(s1, [](long n) { return n % 2 == 0 ? 1.0 : 0.0; }, 0.0);
  CHECK(absolute_continuity_multiplier(s1, even_closed).verdict == "not-absolutely-continuous");
}

TEST_CASE("measure JSON round trip and validation") {
  const AtomicMeasure mu = clark_measure(InnerFunction::atomic_singular({{0.0, 1.0}}), 5);
  const AtomicMeasure back = atomic_measure_from_json(to_json(mu));
  REQUIRE(back.atoms.size() == mu.atoms.size());
  CHECK(back.tail_bound == mu.tail_bound);
  const auto bad = nlohmann::json::parse(R"({"atoms":[{"angle_turns":0.1,"weight":-1}]})");
  CHECK_THROWS_AS(atomic_measure_from_json(bad), DescriptorError);
}
