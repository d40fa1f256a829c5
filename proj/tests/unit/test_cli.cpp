#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "modelmult/cli.hpp"
#include "modelmult/report.hpp"

using namespace modelmult;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json parsed() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "modelmult");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("mult-basis example gives dimension 3 with coefficient lists") {
  const Run r = run({"mult-basis", "--u-zeros", "0", "--v-zeros", "0,0,0"});
  REQUIRE(r.code == 0);
  const json j = r.parsed();
  CHECK(j["result"]["dimension"] == 3);
  CHECK(j["result"]["elements"].size() == 3);
  CHECK(j["result"]["elements"][2]["numerator"].size() == 3);
  CHECK(j["config"]["v-zeros"] == "0,0,0");
}

TEST_CASE("kernel-dim for u = v is one") {
  const Run r = run({"kernel-dim", "--u-zeros", "0.5", "--v-zeros", "0.5"});
  REQUIRE(r.code == 0);
  CHECK(r.parsed()["result"]["dimension"] == 1);
  CHECK(r.parsed()["tolerances"]["nullspace_relative"] == 1e-8);
}

TEST_CASE("exit codes") {
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"mult-basis", "--no-such-flag"}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == 0);

  const Run bad = run({"eval", "--u", R"({"type":"finite_blaschke","zeros":[[0.1,0],{"x":1}]})", "--z", "0"});
  CHECK(bad.code == cli::kExitDescriptor);
  CHECK(bad.parsed()["error"]["pointer"] == "/zeros/1");
  CHECK(run({"eval", "--u", "{not json", "--z", "0"}).code == cli::kExitDescriptor);

  const Run domain = run({"eval", "--u-zeros", "0.5", "--z", "2"});
  CHECK(domain.code == cli::kExitDomain);
  CHECK(domain.parsed()["error"]["kind"] == "domain");
  CHECK(run({"clark", "--u", R"({"type":"atomic_singular","atoms":[{"angle_turns":0,"weight":1},{"angle_turns":0.5,"weight":1}]})"})
            .code == cli::kExitDomain);
}

TEST_CASE("subcommands produce reports with tolerances and grids") {
  const std::string exp_u = R"({"type":"atomic_singular","atoms":[{"angle_turns":0,"weight":1}]})";
  const std::vector<std::vector<std::string>> cases = {
      {"eval", "--u", exp_u, "--z", "0,0.5i,-1"},
      {"kernel", "--u-zeros", "0.5,0.3i", "--lambda", "0.2-0.1i", "--z", "0,0.4"},
      {"basis", "--u-zeros", "0.5,0.3i", "--crofoot-a", "0.2+0.2i"},
      {"membership", "--u-zeros", "0.5", "--v-zeros", "0.5,-0.5", "--phi-basis", "1"},
      {"membership", "--u", exp_u, "--v",
       R"({"type":"product","factors":[)" + exp_u + R"(,{"type":"finite_blaschke","zeros":[0,-0.5]}]})",
       "--phi-num", "1"},
      {"necessary-sup", "--u-zeros", "0.5", "--v-zeros", "0.5,-0.5", "--phi-basis", "0", "--max-k", "6",
       "--angles", "32"},
      {"cohn-sup", "--u", exp_u, "--phi-num", "1,1", "--max-k", "6", "--angles", "32"},
      {"clark", "--u", exp_u, "--truncation", "10"},
      {"poisson-check", "--u", exp_u, "--samples", "20", "--seed", "7"},
      {"ac-mult", "--u-zeros", "0.5,0.2i", "--v-zeros", "0.5,0.2i"},
      {"transfer", "--phi-num", "0,1", "--xs", "-1,0,2", "--u-zeros", "0.3", "--v-zeros", "0.3,-0.3"},
      {"product-eval", "--product", "E_delta", "--delta", "0.2", "--z", "1.5,2+1i"},
      {"product-eval", "--product", "E2_tilde", "--z", "2i"},
      {"ls-ratio", "--delta", "0.1", "--midpoints", "5"},
      {"ahern-clark", "--product", "E1", "--count", "10"},
      {"ahern-clark", "--zeros", R"({"zeros":[[0,0.5]],"tail":{"kind":"geometric","scale":1,"ratio":0.5,"start":2}})"},
  };
  for (const auto& c : cases) {
    CAPTURE(c[0]);
    const Run r = run(c);
    CHECK(r.code == 0);
    if (r.code != 0) {
      MESSAGE(std::string(r.out + r.err));
      continue;
    }
    const json j = r.parsed();
    CHECK(j["command"] == c[0]);
    CHECK(j.contains("tolerances"));
    CHECK(j.contains("grids"));
    CHECK(j.contains("config"));
  }
}

TEST_CASE("csv output and seed reproducibility") {
  const std::string path = "test_cli_poisson.csv";
  const std::string exp_u = R"({"type":"atomic_singular","atoms":[{"angle_turns":0,"weight":1}]})";
  REQUIRE(run({"poisson-check", "--u", exp_u, "--samples", "10", "--seed", "3", "--csv", path}).code == 0);
  const std::string csv = slurp(path);
  CHECK(csv.rfind("z_re,z_im,lhs,rhs,residual\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  std::size_t lines = 0;
  for (const char ch : csv) lines += ch == '\n';
  CHECK(lines == 11);
  const Run a = run({"poisson-check", "--u", exp_u, "--samples", "10", "--seed", "3"});
  const Run b = run({"poisson-check", "--u", exp_u, "--samples", "10", "--seed", "3"});
  const Run c = run({"poisson-check", "--u", exp_u, "--samples", "10", "--seed", "4"});
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  std::remove(path.c_str());
}

TEST_CASE("verify-example reports criteria and is byte-identical across runs") {
  const Run a = run({"verify-example", "u-alpha-sublevel"});
  const Run b = run({"verify-example", "u-alpha-sublevel"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const json j = a.parsed();
  CHECK(j["result"]["passed"] == true);
  CHECK(j["result"]["criteria"].size() == 4);
  CHECK(j["grids"].contains("sublevel"));
  CHECK(run({"verify-example", "no-such-fixture"}).code == cli::kExitUsage);
  const Run ex = run({"verify-example", "example-3.5", "--strict"});
  CHECK((ex.code == 0) == ex.parsed()["result"]["passed"].get<bool>());
}

TEST_CASE("thread count does not change the output") {
  const std::vector<std::string> args = {"verify-example", "e1-e2-ac"};
  setenv("MODELSPACE_THREADS", "1", 1);
  const Run one = run(args);
  setenv("MODELSPACE_THREADS", "3", 1);
  const Run three = run(args);
  unsetenv("MODELSPACE_THREADS");
  CHECK(one.out == three.out);
}
