#include "acg/sampling.hpp"

#include "acg/errors.hpp"

namespace acg {

double Sampler::uniform(double lo, double hi) {
  const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

namespace {

std::pair<double, double> interval(const StructureSpec& spec, int i) {
  return spec.domain.empty() ? kDefaultInterval : spec.domain.at(static_cast<std::size_t>(i));
}

}  // namespace

std::vector<Point> sample_base(const StructureSpec& spec, int count, std::uint64_t seed) {
  if (count < 1) throw DimensionMismatch("sample count must be at least 1");
  Sampler s(seed);
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    Point p;
    for (int i = 0; i < spec.n; ++i) {
      const auto [lo, hi] = interval(spec, i);
      p.set(i, s.uniform(lo, hi));
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Point> sample_prolonged(const StructureSpec& spec, int count, std::uint64_t seed,
                                    std::pair<double, double> fiber) {
  if (count < 1) throw DimensionMismatch("sample count must be at least 1");
  Sampler s(seed);
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    Point p;
    for (int i = 0; i < spec.n; ++i) {
      const auto [lo, hi] = interval(spec, i);
      p.set(i, s.uniform(lo, hi));
    }
    for (int a = 0; a < spec.m(); ++a) p.set(spec.n + a, s.uniform(fiber.first, fiber.second));
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace acg
