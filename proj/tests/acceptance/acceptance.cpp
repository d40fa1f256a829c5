// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance                 run everything
//   acceptance --criterion N   run criterion N only

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "modelmult/clark.hpp"
#include "modelmult/cli.hpp"
#include "modelmult/fixtures.hpp"
#include "modelmult/modelspace.hpp"
#include "modelmult/multiplier.hpp"
#include "random_inputs.hpp"

using namespace modelmult;
using modelmult::testing::Draw;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::vector<cplx> zeros(Draw& d, int n) { return d.disk_points(n, 0.9); }

std::string failing_criteria(const FixtureResult& f) {
  std::string s;
  for (const auto& c : f.criteria) {
    if (!c.passed) s += " " + c.name + "=" + fmt("%.4g", c.value) + " (need " + c.comparison + " " + fmt("%.4g", c.threshold) + ")";
  }
  return s;
}

Outcome fixture_outcome(const std::string& name, double time_limit) {
  const auto t0 = Clock::now();
  const FixtureResult f = run_fixture(name);
  const double t = seconds_since(t0);
  Outcome o;
  o.passed = f.passed() && (time_limit <= 0.0 || t < time_limit);
  std::ostringstream ss;
  ss << f.criteria.size() << " checks";
  for (const auto& c : f.criteria) ss << "; " << c.name << "=" << fmt("%.4g", c.value);
  if (!f.passed()) ss << "; failing:" << failing_criteria(f);
  ss << "; " << fmt("%.2f", t) << " s";
  if (time_limit > 0.0) ss << " (limit " << fmt("%.0f", time_limit) << " s)";
  o.detail = ss.str();
  return o;
}

Outcome c1_dimension_law() {
  const auto t0 = Clock::now();
  Draw d(1001);
  int agree = 0, total = 200;
  for (int i = 0; i < total; ++i) {
    const int n = d.integer(1, 8), m = d.integer(1, n);
    const auto vz = zeros(d, n);
    auto uz = zeros(d, m);
    if (i % 4 == 0) uz[0] = vz[0];
    const int formula = multiplier_basis(uz, vz).dimension();
    const int kernel = toeplitz_kernel_dim(uz, vz).dimension;
    if (formula == n - m + 1 && kernel == formula) ++agree;
  }
  const double t = seconds_since(t0);
  return {agree == total && t < 10.0,
          std::to_string(agree) + "/" + std::to_string(total) + " pairs with formula = n-m+1 = kernel dim; " +
              fmt("%.2f", t) + " s (limit 10 s)"};
}

Outcome c2_constants() {
  Draw d(1002);
  int ok = 0;
  for (int i = 0; i < 50; ++i) {
    const auto uz = zeros(d, d.integer(1, 8));
    const ToeplitzKernel k = toeplitz_kernel_dim(uz, uz);
    if (k.dimension != 1) continue;
    const RationalFunction& c = k.basis.front();
    const cplx c0 = c(0.0);
    bool constant = std::abs(c0) > 0.0;
    for (int j = 0; j < 10 && constant; ++j) constant = std::abs(c(d.disk(0.95)) - c0) <= 1e-10 * std::abs(c0);
    ok += constant;
  }
  return {ok == 50, std::to_string(ok) + "/50 with dimension 1 and constant basis"};
}

Outcome c3_kernel_norm() {
  Draw d(1003);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const InnerFunction u = InnerFunction::finite_blaschke(zeros(d, d.integer(1, 6)));
    const cplx l = d.disk(0.9);
    worst = std::max(worst, std::abs(kernel_norm_sq(u, l) - kernel_norm_sq_quadrature(u, l)));
  }
  return {worst < 1e-9, "max |formula - quadrature| = " + fmt("%.3g", worst) + " (limit 1e-9)"};
}

Outcome c4_crofoot() {
  Draw d(1004);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const InnerFunction u = InnerFunction::finite_blaschke(zeros(d, d.integer(1, 6)));
    const cplx a = d.disk(0.9);
    const ModelSpaceBasis b(u);
    std::vector<AnalyticFunction> after;
    for (const auto& e : b.elements()) after.push_back(AnalyticFunction::from(crofoot_transform(u, a, e)));
    worst = std::max(worst, (gram_matrix(b.analytic_elements()) - gram_matrix(after)).cwiseAbs().maxCoeff());
  }
  return {worst < 1e-8, "max Gram entry difference = " + fmt("%.3g", worst) + " over 20 draws (limit 1e-8)"};
}

Outcome c11_determinism() {
  int identical = 0;
  for (const auto& name : fixture_names()) {
    std::string outs[2];
    for (auto& text : outs) {
      std::ostringstream out, err;
      cli::run({"modelmult", "verify-example", name}, out, err);
      text = out.str();
    }
    identical += !outs[0].empty() && outs[0] == outs[1];
  }
  const int total = static_cast<int>(fixture_names().size());
  return {identical == total, std::to_string(identical) + "/" + std::to_string(total) +
                                  " fixtures byte-identical across two runs"};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  const std::vector<Criterion> criteria = {
      {1, "multiplier dimension law", c1_dimension_law},
      {2, "M(u,u) is the constants", c2_constants},
      {3, "kernel norm identity", c3_kernel_norm},
      {4, "Crofoot transform unitarity", c4_crofoot},
      {5, "Clark Poisson identity", [] { return fixture_outcome("clark-exp", 0.0); }},
      {6, "interpolating-sequence multiplier growth", [] { return fixture_outcome("example-3.5", 5.0); }},
      {7, "K_{zI} multipliers for disjoint spectra", [] { return fixture_outcome("spectrum-disjoint", 0.0); }},
      {8, "sub-level containment for v = u^alpha", [] { return fixture_outcome("u-alpha-sublevel", 0.0); }},
      {9, "E_delta asymptotics on the line", [] { return fixture_outcome("e-delta", 30.0); }},
      {10, "Ahern-Clark dichotomy at infinity", [] { return fixture_outcome("e1-e2-ac", 0.0); }},
      {11, "fixture determinism", c11_determinism},
  };
  int failures = 0, ran = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %2d %s: %s\n", o.passed ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str());
    failures += !o.passed;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no such criterion\n");
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
