#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "acg/expr.hpp"
#include "acg/structure.hpp"

namespace acg {

// Seeded uniform sampler. Uses the raw mt19937_64 stream with an explicit
// 53-bit mapping so sequences are identical across standard libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi);

 private:
  std::mt19937_64 rng_;
};

inline constexpr std::pair<double, double> kDefaultInterval{-1.0, 1.0};

// Points binding x1..xn inside the structure's sampling box.
std::vector<Point> sample_base(const StructureSpec& spec, int count, std::uint64_t seed);
// Points of the total space of D: x1..xn plus fiber coordinates x(n+1)..x(2n-1).
std::vector<Point> sample_prolonged(const StructureSpec& spec, int count, std::uint64_t seed,
                                    std::pair<double, double> fiber = kDefaultInterval);

}  // namespace acg
