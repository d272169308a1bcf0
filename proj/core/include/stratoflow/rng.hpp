#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace stratoflow {

// Counted splittable generator: every draw is a pure function of
// (seed, stream label, counter), so module-local streams never interact
// and runs are reproducible regardless of evaluation order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::string_view label = "") : state_(seed) {
    for (char c : label) state_ = mix(state_ ^ static_cast<std::uint64_t>(c));
    state_ = mix(state_);
  }

  Rng stream(std::string_view label) const {
    Rng r(state_, label);
    return r;
  }

  std::uint64_t next_u64() {
    counter_ += 0x9e3779b97f4a7c15ull;
    return mix(state_ ^ counter_);
  }

  // uniform in [0, 1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // standard normal via Box-Muller (no libm state, deterministic)
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace stratoflow
