#include <doctest.h>

#include "modelmult/errors.hpp"
#include "modelmult/grid.hpp"

using namespace modelmult;

TEST_CASE("dyadic grid layout and designated ray") {
  const DiskGrid g = DiskGrid::dyadic(5, 16, {0.0, 0.5});
  CHECK(g.size() == 1 + 5 * 16 + 2 * 5);
  REQUIRE(g.rays().size() == 2);
  const Ray& r = g.rays().front();
  REQUIRE(r.radii.size() == 5);
  for (std::size_t k = 0; k < r.radii.size(); ++k) {
    CHECK(r.radii[k] == doctest::Approx(1.0 - std::ldexp(1.0, -static_cast<int>(k) - 1)));
    CHECK(std::abs(g.points()[r.index[k]] - cplx(r.radii[k], 0.0)) < 1e-15);
  }
  CHECK_THROWS_AS(DiskGrid::dyadic(0), DomainError);
}

TEST_CASE("grid specs round trip") {
  for (const DiskGrid& g : {DiskGrid::dyadic(4, 8), DiskGrid::polar(6, 10),
                            DiskGrid::explicit_points({0.1, cplx(0.2, 0.3)}).add_ray(0.25, {0.5, 0.9})}) {
    const DiskGrid h = DiskGrid::from_spec(g.spec());
    REQUIRE(h.size() == g.size());
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(h.points()[i] - g.points()[i]) < 1e-15);
    CHECK(h.spec() == g.spec());
  }
}

TEST_CASE("growth assessment over a window") {
  const GrowthRule rule{4, 4.0};
  const auto flat = assess_growth({1, 1.1, 0.9, 1.2, 1.0, 1.1}, rule);
  CHECK_FALSE(flat.detected);
  const auto doubling = assess_growth({1, 2, 4, 8, 16, 32}, rule);
  CHECK(doubling.detected);
  CHECK(doubling.window_factor == doctest::Approx(16.0));
  CHECK(doubling.last_step_factor == doctest::Approx(2.0));
  // Non-finite values are ignored; short sequences never trigger.
  CHECK_FALSE(assess_growth({1, 100, 10000}, rule).detected);
  const auto with_nan = assess_growth({1, NAN, 2, 4, 8, 16, 32}, rule);
  CHECK(with_nan.detected);
  // Running sup: a dip does not reset growth.
  const auto dip = assess_growth({1, 10, 0.1, 0.1, 0.1, 50}, rule);
  CHECK(dip.running_sup.back() == doctest::Approx(50.0));
}

TEST_CASE("line grid") {
  const LineGrid l = LineGrid::uniform(-1.0, 1.0, 5);
  REQUIRE(l.xs.size() == 5);
  CHECK(l.xs[2] == doctest::Approx(0.0));
  CHECK(l.spec()["kind"] == "uniform");
}
