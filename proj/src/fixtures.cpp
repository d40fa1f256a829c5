#include "modelmult/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "modelmult/clark.hpp"
#include "modelmult/errors.hpp"
#include "modelmult/grid.hpp"
#include "modelmult/halfplane.hpp"
#include "modelmult/inner.hpp"
#include "modelmult/json_io.hpp"
#include "modelmult/modelspace.hpp"
#include "modelmult/multiplier.hpp"

namespace modelmult {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

CriterionResult at_least(std::string name, double value, double threshold, std::string note = {}) {
  return {std::move(name), value >= threshold, value, threshold, ">=", std::move(note)};
}

CriterionResult below(std::string name, double value, double threshold, std::string note = {}) {
  return {std::move(name), value < threshold, value, threshold, "<", std::move(note)};
}

CriterionResult holds(std::string name, bool ok, std::string note = {}) {
  return {std::move(name), ok, ok ? 1.0 : 0.0, 1.0, "==", std::move(note)};
}

InnerFunction singular_at_one(double weight) { return InnerFunction::atomic_singular({{0.0, weight}}); }

// Golden-angle spiral of n points filling the disk of radius r.
std::vector<cplx> spiral(int n, double r) {
  const double golden = 0.5 * (3.0 - std::sqrt(5.0));
  std::vector<cplx> pts;
  for (int k = 0; k < n; ++k) {
    const double rad = r * std::sqrt((k + 0.5) / n);
    pts.push_back(rad * from_turns(golden * k));
  }
  return pts;
}

// example-3.5 fixture: interpolating Blaschke nodes 1 - 2^{-n} and a multiplier
// candidate whose necessary-condition ratio grows along the ray.
FixtureResult example_3_5() {
  constexpr int kNodes = 10;
  FixtureResult f;
  f.name = "example-3.5";
  std::vector<cplx> lambdas, values;
  for (int n = 1; n <= kNodes; ++n) {
    const double l = 1.0 - std::ldexp(1.0, -n);
    lambdas.push_back(l);
    values.push_back((1.0 / n) / std::sqrt(1.0 - l * l));
  }
  const InnerFunction blaschke = InnerFunction::finite_blaschke(lambdas);
  const InnerFunction u = singular_at_one(1.0);
  const InnerFunction v = InnerFunction::product(u, blaschke);
  const Interpolant phi = interpolate(blaschke, lambdas, values);

  const GrowthRule rule;
  const DiskGrid grid = DiskGrid::dyadic(kNodes, 256, {0.0});
  const CarlesonReport rep = necessary_condition_sup(phi.as_analytic().fn, u, v, grid, rule);

  std::vector<double> ratios;
  f.table.header = {"n", "lambda", "abs_phi", "abs_u", "abs_v", "ratio"};
  for (int n = 1; n <= kNodes; ++n) {
    const cplx l = lambdas[n - 1];
    const double ap = std::abs(phi(l)), au = std::abs(u(l)), av = std::abs(v(l));
    const double ratio = ap * ap * (1.0 - au * au) / (1.0 - av * av);
    ratios.push_back(ratio);
    f.table.add_row({static_cast<long long>(n), l.real(), ap, au, av, ratio});
  }
  f.criteria.push_back(at_least("ratio-growth-n6-to-n10", ratios[9] / ratios[5], 2.0));
  f.criteria.push_back(at_least("ratio-n10-over-n1", ratios[9] / ratios[0], 10.0,
                                "ratio behaves like 2^n/n^2 here; ten nodes are not enough for a tenfold rise"));
  f.criteria.push_back(holds("verdict-growth-detected", rep.verdict == "growth-detected"));

  f.tolerances = {{"growth_rule", rule.spec()}, {"interpolation_condition_limit", kMaxInterpolationCondition}};
  f.grids = {{"necessary_sup", grid.spec()}};
  f.data = {{"u", u.to_json()},
            {"v", v.to_json()},
            {"interpolation_nodes", complex_list_to_json(lambdas)},
            {"interpolation_values", complex_list_to_json(values)},
            {"interpolation_condition_number", phi.condition_number},
            {"interpolation_max_residual", phi.max_residual},
            {"ratios", ratios},
            {"necessary_sup", to_json(rep)}};
  return f;
}

// Disjoint spectra: u singular at 1, I with zeros near -1; the model space
// K_{zI} consists of multipliers from K_u into K_{u z I}.
FixtureResult spectrum_disjoint() {
  FixtureResult f;
  f.name = "spectrum-disjoint";
  const InnerFunction u = singular_at_one(1.0);
  const std::vector<cplx> i_zeros = {-0.8, cplx(-0.7, 0.2), cplx(-0.7, -0.2), -0.6};
  const InnerFunction inner_i = InnerFunction::finite_blaschke(i_zeros);
  const InnerFunction zi = InnerFunction::product(InnerFunction::identity(), inner_i);
  const InnerFunction v = InnerFunction::product(u, zi);
  const std::vector<cplx> points = {0.0, 0.3, cplx(0.0, -0.4), cplx(0.5, 0.2), cplx(-0.3, 0.5), 0.7};
  constexpr int kMaxPower = 6;
  constexpr double kTol = 1e-6;
  const DiskGrid grid = DiskGrid::dyadic();
  const CircleQuadrature quad(64);

  const bool disjoint = spectra_disjoint(u.boundary_spectrum(), inner_i.boundary_spectrum());
  f.criteria.push_back(holds("spectra-disjoint", disjoint));

  const ModelSpaceBasis basis(zi);
  const std::vector<AnalyticFunction> elems = basis.analytic_elements();
  json members = json::array();
  double worst = 0.0;
  bool all_bounded = true;
  double worst_sup = 0.0;
  f.table.header = {"element", "spot_residual", "member", "cohn_sup", "cohn_verdict"};
  for (std::size_t k = 0; k < elems.size(); ++k) {
    const MembershipReport m = membership_spot_check(elems[k], u, v, points, kMaxPower, kTol);
    const CarlesonReport c = cohn_carleson_sup(elems[k], u, grid, quad);
    worst = std::max(worst, m.max_residual);
    worst_sup = std::max(worst_sup, c.sup_value);
    all_bounded = all_bounded && c.verdict == "bounded-on-grid";
    json cj = to_json(c);
    cj.erase("grid");
    members.push_back({{"element", to_json(basis.elements()[k])}, {"membership", to_json(m)}, {"cohn_sup", cj}});
    f.table.add_row({static_cast<long long>(k), m.max_residual, std::string(m.member ? "true" : "false"),
                     c.sup_value, c.verdict});
  }
  f.criteria.push_back(below("basis-membership-max-residual", worst, kTol));
  f.criteria.push_back(holds("cohn-sup-bounded-on-grid", all_bounded));

  f.tolerances = {{"membership_residual", kTol}, {"growth_rule", GrowthRule{}.spec()}};
  f.grids = {{"cohn_sup", grid.spec()}, {"cohn_base_nodes", quad.size()},
             {"spot_points", complex_list_to_json(points)}, {"max_power", kMaxPower}};
  f.data = {{"u", u.to_json()}, {"I", inner_i.to_json()}, {"v", v.to_json()},
            {"dimension", basis.dimension()}, {"max_cohn_sup", worst_sup}, {"elements", members}};
  return f;
}

// v = u^alpha for the singular u: {|v| < e} equals {|u| < e^{1/alpha}}.
FixtureResult u_alpha_sublevel() {
  FixtureResult f;
  f.name = "u-alpha-sublevel";
  const InnerFunction u = singular_at_one(1.0);
  const DiskGrid grid = DiskGrid::dyadic();
  json cases = json::array();
  f.table.header = {"alpha", "eps_v", "eps_u", "points_in_v_sublevel", "witnesses"};
  for (const int alpha : {2, 3}) {
    const InnerFunction v = singular_at_one(static_cast<double>(alpha));
    for (const double eps_v : {0.1, 0.25}) {
      const double eps_u = std::pow(eps_v, 1.0 / alpha);
      const SublevelReport r = sublevel_contained(u, v, eps_u, eps_v, grid);
      json rj = to_json(r);
      rj.erase("grid");
      cases.push_back({{"alpha", alpha}, {"report", rj}});
      f.table.add_row({static_cast<long long>(alpha), eps_v, eps_u,
                       static_cast<long long>(r.points_in_v_sublevel), static_cast<long long>(r.witness_count)});
      f.criteria.push_back({"containment-alpha" + std::to_string(alpha) + "-eps" + short_num(eps_v),
                            r.contained && r.points_in_v_sublevel > 0, static_cast<double>(r.witness_count), 0.0,
                            "==", "witness count; the v sub-level set must also be non-empty on the grid"});
    }
  }
  f.tolerances = {{"eps_u_rule", "eps_v^(1/alpha)"}};
  f.grids = {{"sublevel", grid.spec()}};
  f.data = {{"u", u.to_json()}, {"cases", cases}};
  return f;
}

// Clark measure of exp((z+1)/(z-1)) and of a few finite Blaschke products.
FixtureResult clark_exp() {
  constexpr int kTruncation = 200;
  constexpr double kFiniteTol = 1e-10;
  FixtureResult f;
  f.name = "clark-exp";
  const InnerFunction u = singular_at_one(1.0);
  const AtomicMeasure mu = clark_measure(u, kTruncation);
  const std::vector<cplx> samples = spiral(100, 0.9);
  const PoissonReport pr = poisson_identity_residual(u, mu, samples);
  f.criteria.push_back(holds("exp-poisson-within-tail-bound", pr.within_tail_bound && pr.samples == samples.size()));

  double weight_dev = 0.0;
  for (const auto& a : mu.atoms) {
    const double n = static_cast<double>(a.index);
    const double c = 2.0 / (4.0 * kPi * kPi * n * n + 1.0);
    weight_dev = std::max(weight_dev, std::abs(a.weight - c) / c);
  }
  f.criteria.push_back(below("exp-weights-match-closed-form", weight_dev, 1e-13));

  const std::vector<std::vector<cplx>> finite_cases = {
      {0.5},
      {cplx(0.3, 0.4), -0.6, cplx(0.0, 0.1)},
      {0.9, cplx(-0.5, 0.5), cplx(0.2, -0.7), 0.0, cplx(0.0, 0.85)},
  };
  f.table.header = {"case", "atoms", "max_residual", "tail_bound", "within_bound"};
  f.table.add_row({std::string("exp"), static_cast<long long>(mu.atoms.size()), pr.max_residual, mu.tail_bound,
                   std::string(pr.within_tail_bound ? "true" : "false")});
  json finite = json::array();
  double worst_finite = 0.0;
  for (std::size_t i = 0; i < finite_cases.size(); ++i) {
    const InnerFunction b = InnerFunction::finite_blaschke(finite_cases[i]);
    const AtomicMeasure m = clark_measure(b);
    const PoissonReport r = poisson_identity_residual(b, m, samples);
    worst_finite = std::max(worst_finite, r.max_residual);
    finite.push_back({{"u", b.to_json()}, {"measure", to_json(m)}, {"poisson", to_json(r)}});
    f.table.add_row({std::string("finite-") + std::to_string(i), static_cast<long long>(m.atoms.size()),
                     r.max_residual, 0.0, std::string(r.max_residual < kFiniteTol ? "true" : "false")});
  }
  f.criteria.push_back(below("finite-blaschke-poisson-residual", worst_finite, kFiniteTol));

  json measure = to_json(mu);
  f.tolerances = {{"finite_residual", kFiniteTol},
                  {"allowance_rule", "tail_bound * (1+|z|)/(1-|z|) + 1e-12 * max(1, lhs)"},
                  {"weight_relative_deviation", 1e-13}};
  f.grids = {{"samples", {{"kind", "golden-spiral"}, {"count", samples.size()}, {"radius", 0.9}}}};
  f.data = {{"u", u.to_json()},
            {"truncation", kTruncation},
            {"tail_bound", mu.tail_bound},
            {"listed_mass", mu.listed_mass()},
            {"poisson", to_json(pr)},
            {"max_weight_relative_deviation", weight_dev},
            {"finite_cases", finite}};
  return f;
}

// |E_delta(x)| against (1+|x|)^{2 delta} dist(x, zeros) on the real line.
FixtureResult e_delta() {
  constexpr int kCount = 40;
  constexpr double kSpread = 100.0;
  FixtureResult f;
  f.name = "e-delta";
  json per_delta = json::array();
  f.table.header = {"delta", "x", "abs_E", "dist", "ratio"};
  for (const double delta : {0.1, 0.2}) {
    const std::vector<double> mids = zero_midpoints(delta, kCount);
    std::vector<double> xs;
    for (const double x : mids) {
      xs.push_back(x);
      xs.push_back(-x);
    }
    for (int k = 1; k <= kCount; ++k) {
      xs.push_back(k - delta + 0.25);
      xs.push_back(-(k - delta + 0.25));
    }
    const LsRatioReport rep = lyubarskii_seip_ratio(delta, xs);
    double min_mid_dist = kInf, min_scaled = kInf;
    for (int k = 1; k <= kCount; ++k) {
      const LsSample& s = rep.samples[static_cast<std::size_t>(2 * (k - 1))];
      min_mid_dist = std::min(min_mid_dist, s.dist);
      min_scaled = std::min(min_scaled, s.abs_e / std::pow(static_cast<double>(k), 2.0 * delta));
    }
    for (const auto& s : rep.samples) f.table.add_row({delta, s.x, s.abs_e, s.dist, s.ratio});
    const std::string tag = "-delta" + short_num(delta);
    f.criteria.push_back(at_least("midpoint-distance" + tag, min_mid_dist, 0.5));
    f.criteria.push_back({"midpoint-lower-bound" + tag, min_scaled > 0.0 && std::isfinite(min_scaled), min_scaled,
                          0.0, ">", "min over k of |E(x_k)| / k^{2 delta}"});
    const double spread = rep.max_ratio / rep.min_ratio;
    f.criteria.push_back(below("ratio-spread" + tag, spread, kSpread));
    per_delta.push_back({{"delta", delta},
                         {"min_midpoint_distance", min_mid_dist},
                         {"min_scaled_midpoint_value", min_scaled},
                         {"report", to_json(rep, false)}});
  }
  f.tolerances = {{"ratio_spread_limit", kSpread}, {"product_relative_tolerance", 1e-9}};
  f.grids = {{"xs", {{"kind", "midpoints and quarter points, both signs"}, {"count_per_sign", kCount}}}};
  f.data = {{"deltas", per_delta}};
  return f;
}

// Conjugate zero sequences of E1 and E2_tilde at infinity, and |E1/E2_tilde|
// on dyadic half annuli.
FixtureResult e1_e2_ac() {
  constexpr int kCount = 40;
  constexpr int kAnnuli = 8;
  constexpr double kTol = 1e-12;
  FixtureResult f;
  f.name = "e1-e2-ac";
  const ZeroSequence s1 = conjugate_zero_sequence(CanonicalProduct::e1(), kCount);
  const ZeroSequence s2 = conjugate_zero_sequence(CanonicalProduct::e2_tilde(), kCount);
  const AhernClarkReport r1 = ahern_clark_at_infinity(s1);
  const AhernClarkReport r2 = ahern_clark_at_infinity(s2);
  const double expected = 1.0 / 3.0 + 1.5;
  f.criteria.push_back(holds("e1-divergent", r1.verdict == "divergent"));
  f.criteria.push_back(holds("e2-tilde-finite", r2.verdict == "finite"));
  f.criteria.push_back(below("e2-tilde-listed-sum", std::abs(r2.partial_sum - expected), kTol,
                             "|listed sum - (1/3 + 3/2)|"));

  json sups = json::array();
  f.table.header = {"m", "sup", "argmax_re", "argmax_im", "max_relative_error"};
  std::vector<double> sup_values;
  bool finite = true;
  for (int m = 1; m <= kAnnuli; ++m) {
    const AnnulusSup a = e1_e2_annulus_sup(m);
    sup_values.push_back(a.sup);
    finite = finite && std::isfinite(a.sup);
    sups.push_back(to_json(a));
    f.table.add_row({static_cast<long long>(m), a.sup, a.argmax.real(), a.argmax.imag(), a.max_relative_error});
  }
  f.criteria.push_back(holds("annulus-sups-finite", finite));
  f.criteria.push_back({"annulus-sup-not-increasing", sup_values.back() <= sup_values.front(),
                        sup_values.back(), sup_values.front(), "<=", "sup at m = 8 against sup at m = 1"});

  const cplx z(0.0, 2.0);
  const cplx q = eval_product(CanonicalProduct::e1(), z).value / eval_product(CanonicalProduct::e2_tilde(), z).value;
  f.tolerances = {{"listed_sum", kTol}, {"product_relative_tolerance", 1e-9}};
  f.grids = {{"annulus", {{"radii", 33}, {"angles", 129}, {"m_max", kAnnuli},
                          {"range", "2^m - 2^(m-2) <= |z| <= 2^m + 2^(m-1), 0 <= arg z <= pi"}}}};
  f.data = {{"e1", to_json(r1)},
            {"e2_tilde", to_json(r2)},
            {"e2_tilde_expected_sum", expected},
            {"annulus_sups", sups},
            {"ratio_at_2i", complex_to_json(q)}};
  return f;
}

}  // namespace

bool FixtureResult::passed() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.passed; });
}

json FixtureResult::to_json() const {
  json cs = json::array();
  for (const auto& c : criteria) {
    json j = {{"name", c.name}, {"passed", c.passed}, {"value", number(c.value)},
              {"threshold", number(c.threshold)}, {"comparison", c.comparison}};
    if (!c.note.empty()) j["note"] = c.note;
    cs.push_back(j);
  }
  return {{"fixture", name}, {"passed", passed()}, {"criteria", cs}, {"data", data}};
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {"example-3.5", "spectrum-disjoint", "u-alpha-sublevel",
                                                 "clark-exp",   "e-delta",           "e1-e2-ac"};
  return names;
}

FixtureResult run_fixture(const std::string& name) {
  if (name == "example-3.5") return example_3_5();
  if (name == "spectrum-disjoint") return spectrum_disjoint();
  if (name == "u-alpha-sublevel") return u_alpha_sublevel();
  if (name == "clark-exp") return clark_exp();
  if (name == "e-delta") return e_delta();
  if (name == "e1-e2-ac") return e1_e2_ac();
  throw DomainError("unknown fixture '" + name + "'");
}

}  // namespace modelmult
