#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "modelmult/numerics.hpp"

namespace modelmult::testing {

// Reproducible draws; the double conversion is written out so results do not
// depend on the standard library's distribution implementations.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : gen_(seed) {}

  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * unit(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(unit() * (hi - lo + 1)); }
  cplx disk(double r) { return r * std::sqrt(unit()) * from_turns(unit()); }
  std::vector<cplx> disk_points(int n, double r) {
    std::vector<cplx> out;
    for (int i = 0; i < n; ++i) out.push_back(disk(r));
    return out;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace modelmult::testing
