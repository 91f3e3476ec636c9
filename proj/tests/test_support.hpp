#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace polaron::testing {

/// Seeded generator so property tests are reproducible.
class Gen {
 public:
  explicit Gen(std::uint64_t seed = 0x5eed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
};

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace polaron::testing
