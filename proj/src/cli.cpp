#include "modelmult/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "modelmult/clark.hpp"
#include "modelmult/errors.hpp"
#include "modelmult/fixtures.hpp"
#include "modelmult/grid.hpp"
#include "modelmult/halfplane.hpp"
#include "modelmult/inner.hpp"
#include "modelmult/json_io.hpp"
#include "modelmult/modelspace.hpp"
#include "modelmult/multiplier.hpp"
#include "modelmult/report.hpp"

namespace modelmult::cli {

using nlohmann::json;

namespace {

const std::string kUnset = "\x01";

struct Options {
  std::string out, csv;
  std::uint64_t seed = 0;

  std::string u = kUnset, u_zeros = kUnset, v = kUnset, v_zeros = kUnset;
  std::string phi_num = kUnset, phi_den = "1";
  int phi_basis = -1;

  std::string grid = "dyadic";
  int max_k = 12, angles = 256, n_radii = 32;
  std::string rays = "0";
  int window = 4;
  double factor = 4.0;
  int nodes = 64;

  std::string z = kUnset, lambda = kUnset, points = kUnset, xs = kUnset, a = kUnset;
  double target = 1e-8, tol = -1.0, rel_tol = 1e-9, delta = 0.1, radius = 0.9, h_limit = 1e12;
  double tail_ratio_bound = -1.0;
  int max_power = 6, truncation = 200, samples = 100, midpoints = 0, count = 40, annulus = 0;
  long fixed = 0;
  std::string sigma_u = kUnset, sigma_v = kUnset, zeros = kUnset, product = "E_delta", ac_product = "E1", name;
  bool strict = false, halfplane_check = false;
};

bool given(const std::string& s) { return s != kUnset; }

struct Output {
  Report report;
  CsvTable table;
  int exit_code = kExitOk;
};

json read_json_text(const std::string& text, const std::string& what) {
  std::string body = text;
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw DomainError("cannot open " + what + " file '" + text.substr(1) + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw DescriptorError(what + " is not valid JSON: " + e.what(), "");
  }
}

std::vector<double> parse_real_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const cplx z : parse_complex_list(text, "")) {
    if (z.imag() != 0.0) throw DomainError(what + " expects real numbers");
    out.push_back(z.real());
  }
  return out;
}

std::optional<InnerFunction> maybe_inner(const std::string& desc, const std::string& zeros,
                                         const std::string& which) {
  if (given(desc)) return InnerFunction::from_json(read_json_text(desc, "--" + which));
  if (given(zeros)) return InnerFunction::finite_blaschke(parse_complex_list(zeros, "/zeros"));
  return std::nullopt;
}

InnerFunction load_inner(const std::string& desc, const std::string& zeros, const std::string& which) {
  auto f = maybe_inner(desc, zeros, which);
  if (!f) throw DomainError("--" + which + " or --" + which + "-zeros is required");
  return *f;
}

std::vector<cplx> finite_zeros_of(const InnerFunction& f, const std::string& which) {
  if (!f.is_finite_blaschke()) throw DomainError(which + " must be a finite Blaschke product");
  return f.finite_zeros();
}

RationalFunction load_phi(const Options& o) {
  if (o.phi_basis >= 0) {
    const auto u = load_inner(o.u, o.u_zeros, "u");
    const auto v = load_inner(o.v, o.v_zeros, "v");
    const MultiplierBasis b = multiplier_basis(finite_zeros_of(u, "u"), finite_zeros_of(v, "v"));
    if (o.phi_basis >= b.dimension()) {
      throw DomainError("--phi-basis index out of range (dimension " + std::to_string(b.dimension()) + ")");
    }
    return b.elements[static_cast<std::size_t>(o.phi_basis)];
  }
  if (!given(o.phi_num)) throw DomainError("--phi-num or --phi-basis is required");
  Polynomial num(parse_complex_list(o.phi_num, "/phi_num"));
  Polynomial den(parse_complex_list(o.phi_den, "/phi_den"));
  if (den.is_zero()) throw DomainError("phi denominator is zero");
  return {num, den};
}

DiskGrid load_grid(const Options& o) {
  std::vector<double> rays = parse_real_list(o.rays, "--rays");
  if (o.grid == "dyadic") return DiskGrid::dyadic(o.max_k, o.angles, rays);
  if (o.grid == "polar") {
    DiskGrid g = DiskGrid::polar(o.n_radii, o.angles);
    return g;
  }
  throw DomainError("--grid must be 'dyadic' or 'polar'");
}

GrowthRule load_rule(const Options& o) {
  if (o.window < 1 || !(o.factor > 1.0)) throw DomainError("growth rule needs window >= 1 and factor > 1");
  return {o.window, o.factor};
}

std::vector<cplx> points_or(const Options& o, std::vector<cplx> fallback) {
  return given(o.points) ? parse_complex_list(o.points, "/points") : fallback;
}

// Uniform points in the disk of radius r from a seeded generator; the
// conversion to doubles is spelled out so output does not depend on the
// standard library's distributions.
std::vector<cplx> seeded_disk_points(std::uint64_t seed, int n, double r) {
  std::mt19937_64 gen(seed);
  auto unit = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  std::vector<cplx> pts;
  for (int i = 0; i < n; ++i) {
    const double rad = r * std::sqrt(unit());
    pts.push_back(rad * from_turns(unit()));
  }
  return pts;
}

json ray_table(const CarlesonReport& r, CsvTable& t) {
  t.header = {"radius", "value", "running_sup"};
  for (std::size_t i = 0; i < r.ray_radii.size(); ++i) {
    const double rs = i < r.growth.running_sup.size() ? r.growth.running_sup[i] : std::nan("");
    t.add_row({r.ray_radii[i], r.ray_values[i], rs});
  }
  return to_json(r);
}

// ---- subcommands ------------------------------------------------------------

Output cmd_eval(const Options& o) {
  Output out;
  const InnerFunction u = load_inner(o.u, o.u_zeros, "u");
  if (!given(o.z)) throw DomainError("--z is required");
  const std::vector<cplx> zs = parse_complex_list(o.z, "/z");
  json values = json::array();
  out.table.header = {"z_re", "z_im", "value_re", "value_im", "abs", "error_bound"};
  for (const cplx z : zs) {
    const double r = std::abs(z);
    const Certified c = std::abs(r - 1.0) <= 1e-12 ? u.eval_boundary(z / r, o.target) : u.eval(z, o.target);
    values.push_back({{"z", complex_to_json(z)}, {"value", complex_to_json(c.value)},
                      {"abs", std::abs(c.value)}, {"error_bound", c.error}});
    out.table.add_row({z.real(), z.imag(), c.value.real(), c.value.imag(), std::abs(c.value), c.error});
  }
  out.report.tolerances = {{"target", o.target}};
  out.report.result = {{"u", u.to_json()}, {"values", values},
                       {"boundary_spectrum", to_json(u.boundary_spectrum())}};
  if (const auto d = u.degree()) out.report.result["degree"] = *d;
  return out;
}

Output cmd_kernel(const Options& o) {
  Output out;
  const InnerFunction u = load_inner(o.u, o.u_zeros, "u");
  if (!given(o.lambda)) throw DomainError("--lambda is required");
  const cplx lambda = parse_complex(o.lambda, "/lambda");
  const KernelFunction k(u, lambda);
  json r = {{"u", u.to_json()}, {"lambda", complex_to_json(lambda)}, {"u_lambda", complex_to_json(k.u_lambda)},
            {"norm_sq_formula", kernel_norm_sq(u, lambda)}};
  if (u.is_finite_blaschke()) {
    const double q = kernel_norm_sq_quadrature(u, lambda);
    r["norm_sq_quadrature"] = q;
    r["norm_sq_difference"] = std::abs(q - r["norm_sq_formula"].get<double>());
  }
  out.table.header = {"z_re", "z_im", "k_re", "k_im"};
  if (given(o.z)) {
    json values = json::array();
    for (const cplx z : parse_complex_list(o.z, "/z")) {
      const cplx kz = k(z);
      values.push_back({{"z", complex_to_json(z)}, {"value", complex_to_json(kz)}});
      out.table.add_row({z.real(), z.imag(), kz.real(), kz.imag()});
    }
    r["values"] = values;
  }
  out.report.result = r;
  return out;
}

Output cmd_basis(const Options& o) {
  Output out;
  const InnerFunction u = load_inner(o.u, o.u_zeros, "u");
  finite_zeros_of(u, "u");
  const ModelSpaceBasis b(u);
  const CMatrix g = b.gram();
  json r = to_json(b);
  json gram = json::array();
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < g.cols(); ++j) row.push_back(complex_to_json(g(i, j)));
    gram.push_back(row);
  }
  r["gram"] = gram;
  r["orthogonality_residual"] = b.orthogonality_residual();
  out.table.header = {"element", "power", "numerator_re", "numerator_im"};
  for (std::size_t e = 0; e < b.elements().size(); ++e) {
    const auto& c = b.elements()[e].numerator().coefficients();
    for (std::size_t p = 0; p < c.size(); ++p) {
      out.table.add_row({static_cast<long long>(e), static_cast<long long>(p), c[p].real(), c[p].imag()});
    }
  }
  if (given(o.a)) {
    const cplx a = parse_complex(o.a, "/a");
    std::vector<AnalyticFunction> before = b.analytic_elements(), after;
    json transformed = json::array();
    for (const auto& e : b.elements()) {
      const RationalFunction t = crofoot_transform(u, a, e);
      transformed.push_back(to_json(t));
      after.push_back(AnalyticFunction::from(t));
    }
    const CMatrix g1 = gram_matrix(before), g2 = gram_matrix(after);
    r["crofoot"] = {{"a", complex_to_json(a)},
                    {"shifted", frostman_shift(u, a).to_json()},
                    {"elements", transformed},
                    {"max_gram_difference", (g1 - g2).cwiseAbs().maxCoeff()}};
  }
  out.report.result = r;
  return out;
}

Output cmd_mult_basis(const Options& o) {
  Output out;
  const auto u = load_inner(o.u, o.u_zeros, "u");
  const auto v = load_inner(o.v, o.v_zeros, "v");
  const MultiplierBasis b = multiplier_basis(finite_zeros_of(u, "u"), finite_zeros_of(v, "v"));
  out.report.result = to_json(b);
  out.table.header = {"element", "part", "power", "re", "im"};
  for (std::size_t e = 0; e < b.elements.size(); ++e) {
    for (const auto& [part, poly] : {std::pair<std::string, const Polynomial*>{"numerator", &b.elements[e].numerator()},
                                     {"denominator", &b.elements[e].denominator()}}) {
      const auto& c = poly->coefficients();
      for (std::size_t p = 0; p < c.size(); ++p) {
        out.table.add_row({static_cast<long long>(e), part, static_cast<long long>(p), c[p].real(), c[p].imag()});
      }
    }
  }
  return out;
}

Output cmd_kernel_dim(const Options& o) {
  Output out;
  const auto u = load_inner(o.u, o.u_zeros, "u");
  const auto v = load_inner(o.v, o.v_zeros, "v");
  const double tol = o.tol > 0.0 ? o.tol : kDefaultNullspaceTolerance;
  const ToeplitzKernel k = toeplitz_kernel_dim(finite_zeros_of(u, "u"), finite_zeros_of(v, "v"), tol);
  out.report.tolerances = {{"nullspace_relative", tol}};
  out.report.result = to_json(k);
  out.table.header = {"index", "singular_value"};
  for (Eigen::Index i = 0; i < k.singular_values.size(); ++i) {
    out.table.add_row({static_cast<long long>(i), k.singular_values(i)});
  }
  return out;
}

Output cmd_membership(const Options& o) {
  Output out;
  const auto u = load_inner(o.u, o.u_zeros, "u");
  const auto v = load_inner(o.v, o.v_zeros, "v");
  const RationalFunction phi = load_phi(o);
  const AnalyticFunction pa = AnalyticFunction::from(phi);
  MembershipReport m;
  if (u.is_finite_blaschke() && v.is_finite_blaschke()) {
    m = membership_check(pa, u, v, o.tol > 0.0 ? o.tol : 1e-8);
  } else {
    const std::vector<cplx> pts = points_or(o, {0.0, 0.3, cplx(0.0, -0.4), cplx(0.5, 0.2)});
    m = membership_spot_check(pa, u, v, pts, o.max_power, o.tol > 0.0 ? o.tol : 1e-6);
  }
  out.report.tolerances = {{"residual", m.tolerance}};
  out.report.result = {{"phi", to_json(phi)}, {"u", u.to_json()}, {"v", v.to_json()}, {"membership", to_json(m)}};
  if (o.halfplane_check) {
    double tail = 0.0;
    const double res = halfplane_membership_residual(pa, u, v, &tail);
    out.report.result["halfplane"] = {{"max_residual", res}, {"tail_bound", tail}};
  }
  return out;
}

Output cmd_necessary_sup(const Options& o) {
  Output out;
  const auto u = load_inner(o.u, o.u_zeros, "u");
  const auto v = load_inner(o.v, o.v_zeros, "v");
  const RationalFunction phi = load_phi(o);
  const DiskGrid grid = load_grid(o);
  const GrowthRule rule = load_rule(o);
  const CarlesonReport r = necessary_condition_sup([phi](cplx z) { return phi(z); }, u, v, grid, rule);
  out.report.tolerances = {{"growth_rule", rule.spec()}};
  out.report.grids = {{"disk", grid.spec()}};
  out.report.result = ray_table(r, out.table);
  out.report.result["phi"] = to_json(phi);
  return out;
}

Output cmd_cohn_sup(const Options& o) {
  Output out;
  const auto u = load_inner(o.u, o.u_zeros, "u");
  const RationalFunction phi = load_phi(o);
  const DiskGrid grid = load_grid(o);
  const GrowthRule rule = load_rule(o);
  const CircleQuadrature quad(o.nodes);
  const CarlesonReport r = cohn_carleson_sup(AnalyticFunction::from(phi), u, grid, quad, rule);
  out.report.tolerances = {{"growth_rule", rule.spec()}, {"base_nodes", o.nodes},
                           {"node_rule", "base * 2^j >= 40 / (1 - |lambda|)"}};
  out.report.grids = {{"disk", grid.spec()}};
  out.report.result = ray_table(r, out.table);
  out.report.result["phi"] = to_json(phi);
  return out;
}

Output cmd_clark(const Options& o) {
  Output out;
  const auto u = load_inner(o.u, o.u_zeros, "u");
  const AtomicMeasure mu = clark_measure(u, o.truncation);
  out.report.tolerances = {{"truncation", o.truncation}};
  out.report.result = {{"u", u.to_json()}, {"measure", to_json(mu)}};
  out.table.header = {"index", "angle_turns", "weight"};
  for (const auto& a : mu.atoms) out.table.add_row({static_cast<long long>(a.index), to_turns(a.point), a.weight});
  return out;
}

Output cmd_poisson_check(const Options& o) {
  Output out;
  const auto u = load_inner(o.u, o.u_zeros, "u");
  if (!(o.radius > 0.0 && o.radius < 1.0)) throw DomainError("--radius must lie in (0, 1)");
  if (o.samples < 1) throw DomainError("--samples must be positive");
  const AtomicMeasure mu = clark_measure(u, o.truncation);
  const std::vector<cplx> pts = given(o.points) ? parse_complex_list(o.points, "/points")
                                                : seeded_disk_points(o.seed, o.samples, o.radius);
  const PoissonReport r = poisson_identity_residual(u, mu, pts);
  out.report.tolerances = {{"truncation", o.truncation}, {"tail_bound", mu.tail_bound}};
  out.report.grids = {{"samples", given(o.points) ? json{{"kind", "explicit"}, {"points", complex_list_to_json(pts)}}
                                                  : json{{"kind", "seeded-uniform-disk"}, {"seed", o.seed},
                                                         {"count", o.samples}, {"radius", o.radius}}}};
  out.report.result = {{"u", u.to_json()}, {"atoms", mu.atoms.size()}, {"poisson", to_json(r)}};
  out.table.header = {"z_re", "z_im", "lhs", "rhs", "residual"};
  for (const cplx z : pts) {
    const cplx uz = u(z);
    const double d = std::norm(1.0 - uz);
    if (std::sqrt(d) < 1e-12) continue;
    const double lhs = (1.0 - std::norm(uz)) / d, rhs = mu.poisson(z);
    out.table.add_row({z.real(), z.imag(), lhs, rhs, std::abs(lhs - rhs)});
  }
  return out;
}

Output cmd_ac_mult(const Options& o) {
  Output out;
  auto measure = [&](const std::string& sigma, const std::string& desc, const std::string& zeros,
                     const std::string& which) {
    if (given(sigma)) return atomic_measure_from_json(read_json_text(sigma, "--sigma-" + which));
    return clark_measure(load_inner(desc, zeros, which), o.truncation);
  };
  const AtomicMeasure su = measure(o.sigma_u, o.u, o.u_zeros, "u");
  const AtomicMeasure sv = measure(o.sigma_v, o.v, o.v_zeros, "v");
  std::optional<double> tail;
  if (o.tail_ratio_bound >= 0.0) tail = o.tail_ratio_bound;
  const AbsoluteContinuityReport r = absolute_continuity_multiplier(su, sv, tail, o.h_limit);
  out.report.tolerances = {{"h_limit", o.h_limit}, {"atom_match", 1e-12}};
  if (tail) out.report.tolerances["tail_ratio_bound"] = *tail;
  out.report.result = {{"sigma_u_atoms", su.atoms.size()}, {"sigma_v_atoms", sv.atoms.size()},
                       {"sigma_u_tail_bound", su.tail_bound}, {"sigma_v_tail_bound", sv.tail_bound},
                       {"report", to_json(r)}};
  return out;
}

Output cmd_transfer(const Options& o) {
  Output out;
  const RationalFunction phi = load_phi(o);
  const std::vector<double> xs = given(o.xs) ? parse_real_list(o.xs, "--xs") : LineGrid::uniform(-10, 10, 21).xs;
  const HalfPlaneFunction big_phi = compose_cayley([phi](cplx w) { return phi(w); });
  const HalfPlaneFunction uphi = transfer([phi](cplx w) { return phi(w); });
  json values = json::array();
  out.table.header = {"x", "omega_re", "omega_im", "Phi_re", "Phi_im", "Uphi_re", "Uphi_im"};
  for (const double x : xs) {
    const cplx w = cayley(x), p = big_phi(x), q = uphi(x);
    values.push_back({{"x", x}, {"omega", complex_to_json(w)}, {"Phi", complex_to_json(p)},
                      {"U_phi", complex_to_json(q)}});
    out.table.add_row({x, w.real(), w.imag(), p.real(), p.imag(), q.real(), q.imag()});
  }
  out.report.grids = {{"xs", xs}};
  out.report.result = {{"phi", to_json(phi)}, {"values", values}};
  if (const auto u = maybe_inner(o.u, o.u_zeros, "u")) {
    const auto v = load_inner(o.v, o.v_zeros, "v");
    double tail = 0.0;
    const double res = halfplane_membership_residual(AnalyticFunction::from(phi), *u, v, &tail);
    out.report.tolerances = {{"line_tail_target", 1e-7}};
    out.report.result["membership"] = {{"max_residual", res}, {"tail_bound", tail}};
  }
  return out;
}

Output cmd_product_eval(const Options& o) {
  Output out;
  const CanonicalProduct e = CanonicalProduct::from_name(o.product, o.delta);
  if (!given(o.z)) throw DomainError("--z is required");
  std::optional<long> fixed;
  if (o.fixed > 0) fixed = o.fixed;
  json values = json::array();
  out.table.header = {"z_re", "z_im", "value_re", "value_im", "abs", "relative_error_bound", "truncation"};
  for (const cplx z : parse_complex_list(o.z, "/z")) {
    const ProductValue p = eval_product(e, z, o.rel_tol, fixed);
    json j = to_json(p);
    j["z"] = complex_to_json(z);
    values.push_back(j);
    out.table.add_row({z.real(), z.imag(), p.value.real(), p.value.imag(), std::abs(p.value), p.relative_error,
                       static_cast<long long>(p.truncation)});
  }
  out.report.tolerances = {{"relative", o.rel_tol}};
  if (fixed) out.report.tolerances["fixed_truncation"] = *fixed;
  out.report.result = {{"product", e.name()}, {"values", values}};
  if (e.variant == CanonicalProduct::Variant::EDelta) out.report.result["delta"] = o.delta;
  return out;
}

Output cmd_ls_ratio(const Options& o) {
  Output out;
  std::vector<double> xs;
  if (given(o.xs)) {
    xs = parse_real_list(o.xs, "--xs");
  } else {
    xs = zero_midpoints(o.delta, o.midpoints > 0 ? o.midpoints : 40);
  }
  const LsRatioReport r = lyubarskii_seip_ratio(o.delta, xs);
  out.report.tolerances = {{"product_relative", 1e-9}, {"zero_exclusion", 1e-6}};
  out.report.grids = {{"xs", given(o.xs) ? json{{"kind", "explicit"}, {"count", xs.size()}}
                                         : json{{"kind", "midpoints"}, {"count", xs.size()}}}};
  out.report.result = to_json(r);
  out.table.header = {"x", "abs_E", "dist", "ratio"};
  for (const auto& s : r.samples) out.table.add_row({s.x, s.abs_e, s.dist, s.ratio});
  return out;
}

Output cmd_ahern_clark(const Options& o) {
  Output out;
  ZeroSequence seq;
  if (given(o.zeros)) {
    seq = zero_sequence_from_json(read_json_text(o.zeros, "--zeros"));
  } else {
    seq = conjugate_zero_sequence(CanonicalProduct::from_name(o.ac_product), o.count);
  }
  const AhernClarkReport r = ahern_clark_at_infinity(seq);
  out.report.result = {{"sequence", to_json(seq)}, {"report", to_json(r)}};
  if (o.annulus > 0) {
    json sups = json::array();
    out.table.header = {"m", "sup", "argmax_re", "argmax_im"};
    for (int m = 1; m <= o.annulus; ++m) {
      const AnnulusSup a = e1_e2_annulus_sup(m);
      sups.push_back(to_json(a));
      out.table.add_row({static_cast<long long>(m), a.sup, a.argmax.real(), a.argmax.imag()});
    }
    out.report.result["e1_over_e2_tilde_annulus_sups"] = sups;
    out.report.grids = {{"annulus", {{"radii", 33}, {"angles", 129}}}};
  }
  return out;
}

Output cmd_verify_example(const Options& o) {
  Output out;
  FixtureResult f = run_fixture(o.name);
  out.report.tolerances = f.tolerances;
  out.report.grids = f.grids;
  out.report.result = f.to_json();
  out.table = std::move(f.table);
  if (o.strict && !f.passed()) out.exit_code = kExitFailed;
  return out;
}

// ---- plumbing ---------------------------------------------------------------

void add_common(CLI::App* s, Options& o) {
  s->add_option("--out", o.out, "Write the JSON report to this file instead of stdout");
  s->add_option("--csv", o.csv, "Also write the tabular part as CSV to this file");
  s->add_option("--seed", o.seed, "Seed for randomized sampling")->capture_default_str();
}

void add_u(CLI::App* s, Options& o) {
  s->add_option("--u", o.u, "Inner function descriptor for u (JSON text or @file)");
  s->add_option("--u-zeros", o.u_zeros, "Zeros of a finite Blaschke u, comma separated");
}

void add_v(CLI::App* s, Options& o) {
  s->add_option("--v", o.v, "Inner function descriptor for v (JSON text or @file)");
  s->add_option("--v-zeros", o.v_zeros, "Zeros of a finite Blaschke v, comma separated");
}

void add_phi(CLI::App* s, Options& o) {
  s->add_option("--phi-num", o.phi_num, "Numerator coefficients of phi, ascending powers");
  s->add_option("--phi-den", o.phi_den, "Denominator coefficients of phi, ascending powers")->capture_default_str();
  s->add_option("--phi-basis", o.phi_basis, "Use element k of the multiplier basis for (u, v)");
}

void add_grid(CLI::App* s, Options& o) {
  s->add_option("--grid", o.grid, "dyadic | polar")->capture_default_str();
  s->add_option("--max-k", o.max_k, "Dyadic depth: radii 1 - 2^-k, k <= max-k")->capture_default_str();
  s->add_option("--angles", o.angles, "Angles per circle")->capture_default_str();
  s->add_option("--n-radii", o.n_radii, "Polar grid radii j / n-radii")->capture_default_str();
  s->add_option("--rays", o.rays, "Ray angles in turns (dyadic grid); the first is designated")->capture_default_str();
  s->add_option("--window", o.window, "Growth rule window in steps")->capture_default_str();
  s->add_option("--factor", o.factor, "Growth rule factor over the window")->capture_default_str();
}

json option_config(const CLI::App* s) {
  json c = json::object();
  for (const CLI::Option* opt : s->get_options()) {
    const std::string name = opt->get_name(false, true);
    if (name.empty() || name == "--help" || name == "-h" || name == "--out" || name == "--csv") continue;
    const std::string key = opt->get_single_name();
    if (opt->count() > 0) {
      const auto& res = opt->results();
      c[key] = res.size() == 1 ? json(res.front()) : json(res);
    } else if (!opt->get_default_str().empty()) {
      c[key] = opt->get_default_str();
    }
  }
  return c;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot write '" + path + "'");
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multipliers between model spaces: numeric checks and reports", "modelmult"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Options o;

  std::map<std::string, std::function<Output(const Options&)>> commands;
  auto sub = [&](const std::string& name, const std::string& help, std::function<Output(const Options&)> fn) {
    CLI::App* s = app.add_subcommand(name, help);
    add_common(s, o);
    commands[name] = std::move(fn);
    return s;
  };

  CLI::App* s = sub("eval", "Evaluate an inner function with error bounds", cmd_eval);
  add_u(s, o);
  s->add_option("--z", o.z, "Points, comma separated (|z| = 1 uses boundary evaluation)");
  s->add_option("--target", o.target, "Absolute error target")->capture_default_str();

  s = sub("kernel", "Reproducing kernel of K_u: norm identity and values", cmd_kernel);
  add_u(s, o);
  s->add_option("--lambda", o.lambda, "Kernel point");
  s->add_option("--z", o.z, "Evaluation points");

  s = sub("basis", "Rational basis of K_u for finite Blaschke u", cmd_basis);
  add_u(s, o);
  s->add_option("--crofoot-a", o.a, "Also apply the Crofoot transform with this parameter");

  s = sub("mult-basis", "Basis of multipliers from K_u into K_v (finite Blaschke)", cmd_mult_basis);
  add_u(s, o);
  add_v(s, o);

  s = sub("kernel-dim", "Toeplitz-kernel dimension of the multiplier space", cmd_kernel_dim);
  add_u(s, o);
  add_v(s, o);
  s->add_option("--tol", o.tol, "Relative singular value threshold (default 1e-8)");

  s = sub("membership", "Check that phi K_u lies in K_v", cmd_membership);
  add_u(s, o);
  add_v(s, o);
  add_phi(s, o);
  s->add_option("--tol", o.tol, "Residual tolerance (1e-8 exact check, 1e-6 spot check)");
  s->add_option("--points", o.points, "Kernel points for the spot check");
  s->add_option("--max-power", o.max_power, "Largest t in v z^t for the spot check")->capture_default_str();
  s->add_flag("--halfplane", o.halfplane_check, "Also run the half-plane transferred check");

  s = sub("necessary-sup", "sup of |phi|^2 (1-|u|^2)/(1-|v|^2) over a disk grid", cmd_necessary_sup);
  add_u(s, o);
  add_v(s, o);
  add_phi(s, o);
  add_grid(s, o);

  s = sub("cohn-sup", "Carleson test of |phi|^2 dm for K_u via Poisson averages", cmd_cohn_sup);
  add_u(s, o);
  add_phi(s, o);
  add_grid(s, o);
  s->add_option("--nodes", o.nodes, "Base boundary quadrature nodes")->capture_default_str();

  s = sub("clark", "Clark measure of u", cmd_clark);
  add_u(s, o);
  s->add_option("--truncation", o.truncation, "Atoms |n| <= truncation for singular u")->capture_default_str();

  s = sub("poisson-check", "Poisson identity for the Clark measure", cmd_poisson_check);
  add_u(s, o);
  s->add_option("--truncation", o.truncation, "Atoms |n| <= truncation for singular u")->capture_default_str();
  s->add_option("--samples", o.samples, "Number of seeded sample points")->capture_default_str();
  s->add_option("--radius", o.radius, "Sample radius")->capture_default_str();
  s->add_option("--points", o.points, "Explicit sample points (overrides seeded sampling)");

  s = sub("ac-mult", "Absolute continuity test between Clark measures", cmd_ac_mult);
  add_u(s, o);
  add_v(s, o);
  s->add_option("--sigma-u", o.sigma_u, "Atomic measure JSON for sigma_u (text or @file)");
  s->add_option("--sigma-v", o.sigma_v, "Atomic measure JSON for sigma_v (text or @file)");
  s->add_option("--truncation", o.truncation, "Truncation when computing Clark measures")->capture_default_str();
  s->add_option("--tail-ratio-bound", o.tail_ratio_bound, "Bound for h on atoms omitted from sigma_u");
  s->add_option("--h-limit", o.h_limit, "Density values above this count as unbounded")->capture_default_str();

  s = sub("transfer", "Move phi to the upper half-plane through the Cayley map", cmd_transfer);
  add_u(s, o);
  add_v(s, o);
  add_phi(s, o);
  s->add_option("--xs", o.xs, "Real sample points (default -10..10 step 1)");

  s = sub("product-eval", "Evaluate a canonical product with a certified error", cmd_product_eval);
  s->add_option("--product", o.product, "E_delta | E_quarter | E1 | E2 | E2_tilde")->capture_default_str();
  s->add_option("--delta", o.delta, "delta in (0, 1/4) for E_delta")->capture_default_str();
  s->add_option("--z", o.z, "Points, comma separated");
  s->add_option("--rel-tol", o.rel_tol, "Relative error target")->capture_default_str();
  s->add_option("--truncation", o.fixed, "Fixed number of factors (0 = adaptive)")->capture_default_str();

  s = sub("ls-ratio", "|E_delta(x)| / ((1+|x|)^{2 delta} dist(x, zeros)) on the real line", cmd_ls_ratio);
  s->add_option("--delta", o.delta, "delta in (0, 1/4)")->capture_default_str();
  s->add_option("--xs", o.xs, "Sample points");
  s->add_option("--midpoints", o.midpoints, "Use the first N zero midpoints (default 40)");

  s = sub("ahern-clark", "Sum of Im mu_n for a zero sequence at infinity", cmd_ahern_clark);
  s->add_option("--zeros", o.zeros, "Zero sequence JSON with tail rule (text or @file)");
  s->add_option("--product", o.ac_product, "E1 | E2_tilde: use its conjugate zeros")->capture_default_str();
  s->add_option("--count", o.count, "Explicitly listed zeros for --product")->capture_default_str();
  s->add_option("--annulus", o.annulus, "Also report sup |E1/E2_tilde| on half annuli m = 1..M");

  s = sub("verify-example", "Replay a named fixture and report pass/fail per criterion", cmd_verify_example);
  s->add_option("name", o.name, "Fixture name")->required()->check(CLI::IsMember(fixture_names()));
  s->add_flag("--strict", o.strict, "Exit with status 1 when a criterion fails");

  if (args.size() > 1 && !args[1].empty() && args[1][0] != '-' && !commands.count(args[1])) {
    err << "modelmult: unknown subcommand '" << args[1] << "'\nRun with --help for more information.\n";
    return kExitUsage;
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  try {
    Output res = commands.at(name)(o);
    res.report.command = name;
    res.report.config = option_config(chosen);
    const std::string text = dump_json(res.report.to_json());
    if (o.out.empty()) {
      out << text;
    } else {
      write_text(o.out, text);
    }
    if (!o.csv.empty()) write_text(o.csv, res.table.str());
    return res.exit_code;
  } catch (const DescriptorError& e) {
    out << dump_json(error_json(e));
    err << "modelmult " << name << ": " << e.what() << "\n";
    return kExitDescriptor;
  } catch (const Error& e) {
    out << dump_json(error_json(e));
    err << "modelmult " << name << ": " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    out << dump_json(error_json("internal", e.what()));
    err << "modelmult " << name << ": " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace modelmult::cli
