#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace kentropy {

// Stateless splitmix64-style mixer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Counter-based substream keyed on (seed, stream). Every draw is a pure
// function of (seed, stream, counter), so per-trial streams can be consumed
// in parallel with results independent of scheduling.
class SubRng {
 public:
  SubRng(std::uint64_t seed, std::uint64_t stream)
      : base_(mix64(seed ^ mix64(stream))) {}

  std::uint64_t next_u64() {
    ++ctr_;
    return mix64(base_ ^ (ctr_ * 0xD1B54A32D192ED03ull));
  }

  // uniform in [0,1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform integer in {0..n-1}
  int next_index(int n) {
    int k = static_cast<int>(next_double() * n);
    return k < n ? k : n - 1;
  }

  // standard normal, Box-Muller (two uniforms per draw, no caching)
  double next_gauss() {
    double u1 = next_double();
    if (u1 < 1e-300) u1 = 1e-300;
    double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  // Dirichlet(1,...,1): normalized standard exponentials
  std::vector<double> dirichlet(int n) {
    std::vector<double> e(static_cast<std::size_t>(n));
    double s = 0.0;
    for (auto& v : e) {
      double u = next_double();
      if (u < 1e-300) u = 1e-300;
      v = -std::log(u);
      s += v;
    }
    for (auto& v : e) v /= s;
    return e;
  }

 private:
  std::uint64_t base_;
  std::uint64_t ctr_ = 0;
};

}  // namespace kentropy
