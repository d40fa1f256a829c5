#include "modelmult/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "modelmult/errors.hpp"
#include "modelmult/json_io.hpp"
#include "modelmult/parallel.hpp"

namespace modelmult {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_zeros(const std::vector<cplx>& zeros, const char* which) {
  for (const cplx a : zeros) {
    if (!(std::abs(a) < 1.0)) {
      throw DomainError(std::string(which) + " zero outside the open unit disk");
    }
  }
}

// Distinct points with multiplicities; points closer than 1e-12 are merged.
std::vector<std::pair<cplx, int>> group_zeros(const std::vector<cplx>& zeros) {
  std::vector<std::pair<cplx, int>> out;
  for (const cplx a : zeros) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const auto& g) { return std::abs(g.first - a) < 1e-12; });
    if (it != out.end()) {
      ++it->second;
    } else {
      out.emplace_back(a, 1);
    }
  }
  return out;
}

}  // namespace

MultiplierBasis multiplier_basis(const std::vector<cplx>& u_zeros, const std::vector<cplx>& v_zeros) {
  check_zeros(u_zeros, "u");
  check_zeros(v_zeros, "v");
  MultiplierBasis out;
  out.u_zeros = u_zeros;
  out.v_zeros = v_zeros;
  const int m = static_cast<int>(u_zeros.size());
  const int n = static_cast<int>(v_zeros.size());
  if (m > n) return out;
  std::vector<cplx> num_pts, den_pts = v_zeros;
  for (const cplx a : u_zeros) {
    auto it = std::find_if(den_pts.begin(), den_pts.end(),
                           [&](cplx b) { return std::abs(a - b) < 1e-12; });
    if (it != den_pts.end()) {
      den_pts.erase(it);
      ++out.cancelled_pairs;
    } else {
      num_pts.push_back(a);
    }
  }
  const Polynomial num = reflected_product(num_pts);
  const Polynomial den = reflected_product(den_pts);
  for (int k = 0; k <= n - m; ++k) out.elements.emplace_back(Polynomial::monomial(k) * num, den);
  return out;
}

ToeplitzKernel toeplitz_kernel_dim(const std::vector<cplx>& u_zeros, const std::vector<cplx>& v_zeros,
                                   double tol) {
  check_zeros(u_zeros, "u");
  check_zeros(v_zeros, "v");
  const int n = static_cast<int>(v_zeros.size());
  const int cols = n + 1;
  // Rows: p^(r)(a) = 0 for each zero a of u and r below its multiplicity,
  // with p = sum c_k z^k ranging over the numerators of K_{zv}.
  std::vector<Eigen::RowVectorXcd> rows;
  for (const auto& [a, mult] : group_zeros(u_zeros)) {
    for (int r = 0; r < mult; ++r) {
      Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(cols);
      for (int k = r; k < cols; ++k) {
        double falling = 1.0;
        for (int j = 0; j < r; ++j) falling *= static_cast<double>(k - j);
        row(k) = falling * std::pow(a, k - r);
      }
      const double norm = row.norm();
      if (norm > 0.0) row /= norm;
      rows.push_back(row);
    }
  }
  ToeplitzKernel out;
  out.tolerance = tol;
  CMatrix basis;
  if (rows.empty()) {
    basis = CMatrix::Identity(cols, cols);
    out.dimension = cols;
  } else {
    CMatrix mat(static_cast<Eigen::Index>(rows.size()), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) mat.row(static_cast<Eigen::Index>(i)) = rows[i];
    const Nullspace ns = nullspace(mat, tol);
    out.dimension = ns.dimension;
    out.singular_values = ns.singular_values;
    basis = ns.basis;
  }
  const Polynomial pu = Polynomial::from_roots(u_zeros);
  const Polynomial du = reflected_product(u_zeros);
  const Polynomial dv = reflected_product(v_zeros);
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    std::vector<cplx> coeffs(static_cast<std::size_t>(cols));
    for (int k = 0; k < cols; ++k) coeffs[static_cast<std::size_t>(k)] = basis(k, c);
    const Polynomial p(coeffs);
    const auto div = p.divide(pu);
    for (const cplx r : div.remainder.coefficients()) {
      out.max_division_remainder = std::max(out.max_division_remainder, std::abs(r));
    }
    out.basis.emplace_back(div.quotient * du, dv);
  }
  return out;
}

namespace {

CarlesonReport finish_report(std::string quantity, const std::vector<cplx>& pts,
                             const std::vector<double>& vals, const DiskGrid& grid,
                             const GrowthRule& rule, std::map<std::string, std::size_t> skip_reasons) {
  CarlesonReport r;
  r.quantity = std::move(quantity);
  r.rule = rule;
  r.grid = grid.spec();
  r.argmax = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!std::isfinite(vals[i])) {
      ++r.skipped;
      continue;
    }
    ++r.samples;
    if (vals[i] > r.sup_value) {
      r.sup_value = vals[i];
      r.argmax = pts[i];
    }
  }
  for (const auto& [reason, count] : skip_reasons) {
    r.notes.push_back(std::to_string(count) + " point(s) skipped: " + reason);
  }
  if (grid.rays().empty()) {
    r.notes.push_back("grid has no ray; growth not assessed");
  } else {
    const Ray& ray = grid.rays().front();
    r.ray_radii = ray.radii;
    for (const std::size_t idx : ray.index) r.ray_values.push_back(vals[idx]);
    r.growth = assess_growth(r.ray_values, rule);
  }
  r.verdict = r.growth.detected ? "growth-detected" : "bounded-on-grid";
  return r;
}

}  // namespace

CarlesonReport necessary_condition_sup(const std::function<cplx(cplx)>& phi, const InnerFunction& u,
                                       const InnerFunction& v, const DiskGrid& grid,
                                       const GrowthRule& rule) {
  const auto& pts = grid.points();
  std::vector<double> vals(pts.size(), kNaN);
  std::vector<int> reason(pts.size(), 0);
  parallel_for(pts.size(), [&](std::size_t i) {
    try {
      const double av = std::abs(v(pts[i]));
      if (av >= 1.0 - 1e-14) {
        reason[i] = 1;
        return;
      }
      const double au = std::abs(u(pts[i]));
      vals[i] = std::norm(phi(pts[i])) * (1.0 - au * au) / (1.0 - av * av);
      if (!std::isfinite(vals[i])) reason[i] = 3;
    } catch (const Error&) {
      reason[i] = 2;
    }
  });
  std::map<std::string, std::size_t> skips;
  for (const int r : reason) {
    if (r == 1) ++skips["|v| >= 1 - 1e-14"];
    if (r == 2) ++skips["evaluation failed"];
    if (r == 3) ++skips["non-finite value"];
  }
  return finish_report("|phi|^2 (1-|u|^2) / (1-|v|^2)", pts, vals, grid, rule, skips);
}

CarlesonReport cohn_carleson_sup(const AnalyticFunction& phi, const InnerFunction& u,
                                 const DiskGrid& grid, const CircleQuadrature& quad,
                                 const GrowthRule& rule) {
  constexpr long kMaxNodes = 1L << 24;
  const auto& pts = grid.points();
  const long base = quad.size();
  auto required = [&](cplx l) {
    double need = 40.0 / (1.0 - std::abs(l));
    if (phi.extends_across_circle() && std::isfinite(phi.radius)) {
      need = std::max(need, 40.0 / (phi.radius - 1.0));
    }
    long n = base;
    while (static_cast<double>(n) < need && n < kMaxNodes) n *= 2;
    return n;
  };
  long n_max = base;
  for (const cplx l : pts) n_max = std::max(n_max, required(l));
  if (n_max >= kMaxNodes) throw DomainError("grid point too close to the circle for boundary quadrature");
  std::vector<double> phi_sq(static_cast<std::size_t>(n_max));
  std::vector<cplx> nodes(static_cast<std::size_t>(n_max));
  parallel_for(phi_sq.size(), [&](std::size_t k) {
    nodes[k] = from_turns(static_cast<double>(k) / static_cast<double>(n_max));
    phi_sq[k] = std::norm(phi(nodes[k]));
  });
  for (std::size_t k = 0; k < phi_sq.size(); ++k) {
    if (!std::isfinite(phi_sq[k])) {
      throw EvaluationError("non-finite boundary value of phi at node " + std::to_string(k) + " of " +
                            std::to_string(n_max));
    }
  }
  std::vector<double> vals(pts.size(), kNaN);
  std::vector<int> failed(pts.size(), 0);
  parallel_for(pts.size(), [&](std::size_t i) {
    const cplx l = pts[i];
    const long n = required(l);
    const long stride = n_max / n;
    const double r2 = std::norm(l);
    double acc = 0.0;
    for (long k = 0; k < n_max; k += stride) {
      acc += phi_sq[static_cast<std::size_t>(k)] * (1.0 - r2) / std::norm(nodes[static_cast<std::size_t>(k)] - l);
    }
    try {
      const double au = std::abs(u(l));
      vals[i] = (1.0 - au * au) * acc / static_cast<double>(n);
    } catch (const Error&) {
      failed[i] = 1;
    }
  });
  std::map<std::string, std::size_t> skips;
  for (const int f : failed) {
    if (f) ++skips["evaluation of u failed"];
  }
  CarlesonReport r = finish_report("(1-|u|^2) P[|phi|^2]", pts, vals, grid, rule, skips);
  r.notes.push_back("boundary quadrature refined up to " + std::to_string(n_max) + " nodes");
  if (!phi.extends_across_circle()) r.notes.push_back("phi analyticity radius unknown; nodes set by the Poisson kernel only");
  return r;
}

MembershipReport membership_check(const AnalyticFunction& phi, const InnerFunction& u,
                                  const InnerFunction& v, double tol) {
  if (!u.is_finite_blaschke() || !v.is_finite_blaschke()) {
    throw DomainError("membership_check needs finite Blaschke products; use the spot check");
  }
  MembershipReport rep;
  rep.tolerance = tol;
  rep.method = "K_u basis times phi against v z^t, t = 0..2 deg v";
  const int n = *v.degree();
  const AnalyticFunction va = v.as_analytic();
  if (*u.degree() == 0) {
    rep.member = true;
    rep.details["note"] = "K_u is trivial";
    return rep;
  }
  const ModelSpaceBasis basis(u);
  for (const AnalyticFunction& e : basis.analytic_elements()) {
    const AnalyticFunction f = phi * e;
    const double norm = std::sqrt(std::max(hardy_inner(f, f).real(), 0.0));
    for (int t = 0; t <= 2 * n; ++t) {
      const AnalyticFunction test{[va, t](cplx z) { return va(z) * std::pow(z, t); }, va.radius};
      const double res = norm > 0.0 ? std::abs(hardy_inner(f, test)) / norm : 0.0;
      rep.max_residual = std::max(rep.max_residual, res);
      ++rep.tests;
    }
  }
  rep.member = rep.max_residual < tol;
  return rep;
}

MembershipReport membership_spot_check(const AnalyticFunction& phi, const InnerFunction& u,
                                       const InnerFunction& v, const std::vector<cplx>& points,
                                       int max_power, double tol) {
  if (!phi.extends_across_circle()) {
    throw DomainError("spot check needs phi analytic across the unit circle");
  }
  if (max_power < 0) throw DomainError("max_power must be non-negative");
  MembershipReport rep;
  rep.tolerance = tol;
  std::optional<InnerFunction> quotient;
  if (u.is_finite_blaschke()) {
    rep.method = "phi k_lambda^u against v z^t (u finite)";
  } else {
    quotient = divide(v, u);
    if (!quotient) {
      throw NotImplementedError("spot check needs u finite or v = u q structurally");
    }
    rep.method = "phi k_lambda against v z^t minus conj(u(lambda)) phi k_lambda against q z^t, v = u q";
    rep.details["quotient"] = quotient->to_json();
  }
  const AnalyticFunction va = v.as_analytic();
  for (const cplx l : points) {
    if (!(std::abs(l) < 1.0)) throw DomainError("spot-check point outside the disk");
    const cplx ul = u(l);
    const AnalyticFunction szego{[l](cplx z) { return 1.0 / (1.0 - std::conj(l) * z); },
                                 l == cplx{} ? std::numeric_limits<double>::infinity() : 1.0 / std::abs(l)};
    const AnalyticFunction f = phi * szego;
    const double norm = std::sqrt(std::max(hardy_inner(f, f).real(), 0.0));
    for (int t = 0; t <= max_power; ++t) {
      const AnalyticFunction vt{[va, t](cplx z) { return va(z) * std::pow(z, t); }, va.radius};
      cplx pairing = hardy_inner(f, vt);
      if (quotient) {
        const AnalyticFunction qa = quotient->as_analytic();
        const AnalyticFunction qt{[qa, t](cplx z) { return qa(z) * std::pow(z, t); }, qa.radius};
        pairing -= std::conj(ul) * hardy_inner(f, qt);
      } else {
        const AnalyticFunction fu = f * u.as_analytic();
        pairing -= std::conj(ul) * hardy_inner(fu, vt);
      }
      const double res = norm > 0.0 ? std::abs(pairing) / norm : 0.0;
      rep.max_residual = std::max(rep.max_residual, res);
      ++rep.tests;
    }
  }
  rep.member = rep.max_residual < tol;
  rep.details["points"] = complex_list_to_json(points);
  rep.details["max_power"] = max_power;
  return rep;
}

OuterFactorReport outer_factor_check(const RationalFunction& phi, const std::optional<InnerFunction>& u,
                                     const std::optional<InnerFunction>& v) {
  if (!phi.analytic_on_closed_disk()) throw DomainError("phi has a pole in the closed disk");
  OuterFactorReport rep;
  std::vector<cplx> inside;
  for (const cplx z : phi.numerator().roots()) {
    if (std::abs(std::abs(z) - 1.0) < 1e-9) {
      throw DomainError("phi vanishes on the unit circle; inner-outer split is ambiguous");
    }
    if (std::abs(z) < 1.0) inside.push_back(z);
  }
  rep.inner_zeros = inside;
  // F = phi / B with B = prod (|a|/a)(a - z)/(1 - conj(a) z).
  cplx c = 1.0;
  for (const cplx a : inside) {
    if (a != cplx{}) c *= -a / std::abs(a);
  }
  const auto div = phi.numerator().divide(Polynomial::from_roots(inside));
  rep.outer = RationalFunction(c * (div.quotient * reflected_product(inside)), phi.denominator());
  if (u && v) {
    rep.phi_member = membership_check(AnalyticFunction::from(phi), *u, *v).member;
    rep.outer_member = membership_check(AnalyticFunction::from(rep.outer), *u, *v).member;
    rep.consistent = !*rep.phi_member || *rep.outer_member;
  }
  return rep;
}

// ---- JSON -------------------------------------------------------------------

json to_json(const MultiplierBasis& b) {
  json elems = json::array();
  for (const auto& e : b.elements) elems.push_back(to_json(e));
  return {{"dimension", b.dimension()},
          {"u_zeros", complex_list_to_json(b.u_zeros)},
          {"v_zeros", complex_list_to_json(b.v_zeros)},
          {"cancelled_pairs", b.cancelled_pairs},
          {"elements", elems}};
}

json to_json(const ToeplitzKernel& k) {
  json basis = json::array();
  for (const auto& e : k.basis) basis.push_back(to_json(e));
  std::vector<double> sv(k.singular_values.data(), k.singular_values.data() + k.singular_values.size());
  return {{"dimension", k.dimension},
          {"nullspace_tolerance", k.tolerance},
          {"singular_values", sv},
          {"max_division_remainder", k.max_division_remainder},
          {"basis", basis}};
}

json to_json(const CarlesonReport& r) {
  json ray = json::array();
  for (std::size_t i = 0; i < r.ray_radii.size(); ++i) {
    const double v = r.ray_values[i];
    ray.push_back({{"radius", r.ray_radii[i]}, {"value", std::isfinite(v) ? json(v) : json(nullptr)}});
  }
  return {{"quantity", r.quantity},
          {"sup_value", r.sup_value},
          {"argmax", complex_to_json(r.argmax)},
          {"verdict", r.verdict},
          {"growth_rule", r.rule.spec()},
          {"growth", {{"window_factor", r.growth.window_factor},
                      {"last_step_factor", r.growth.last_step_factor},
                      {"detected", r.growth.detected}}},
          {"designated_ray", ray},
          {"samples", r.samples},
          {"skipped", r.skipped},
          {"notes", r.notes},
          {"grid", r.grid}};
}

json to_json(const MembershipReport& r) {
  return {{"member", r.member},
          {"max_residual", r.max_residual},
          {"tolerance", r.tolerance},
          {"tests", r.tests},
          {"method", r.method},
          {"details", r.details}};
}

json to_json(const OuterFactorReport& r) {
  json j = {{"inner_zeros", complex_list_to_json(r.inner_zeros)},
            {"outer", to_json(r.outer)},
            {"consistent", r.consistent}};
  j["phi_member"] = r.phi_member ? json(*r.phi_member) : json(nullptr);
  j["outer_member"] = r.outer_member ? json(*r.outer_member) : json(nullptr);
  return j;
}

}  // namespace modelmult
