#pragma once

// Shared helpers for the test suites: canonical profiles and a portable
// deterministic uniform generator.

#include <random>
#include <vector>

#include "mbeta/profile.hpp"

namespace mbeta_test {

inline mbeta::Profile tent() { return mbeta::Profile({-1.0, 0.0, 1.0}, {0.0, 1.0, 0.0}); }

inline mbeta::Profile sawtooth_neg() {
  return mbeta::Profile({-1.0, 0.0, 1.0}, {0.0, -1.0, 0.0});
}

inline mbeta::Profile zigzag() {
  return mbeta::Profile({0.0, 1.0, 2.0, 3.0}, {0.0, 1.0, -1.0, 0.0});
}

/// Radial tent: F(t) = (1 - t)^+.
inline mbeta::Profile tent_radial() { return mbeta::Profile({0.0, 1.0}, {1.0, 0.0}); }

/// Plateau: 1 on [0, 1], linear down to 0 at 2.
inline mbeta::Profile plateau() {
  return mbeta::Profile({0.0, 1.0, 2.0}, {1.0, 1.0, 0.0});
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double a, double b) {
    // top-53-bit mapping; identical across standard libraries
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return a + (b - a) * u;
  }
  int uniform_int(int a, int b) {  // inclusive
    return a + static_cast<int>(gen() % static_cast<std::uint64_t>(b - a + 1));
  }
};

/// Random compactly supported piecewise-linear profile on [0, span] with
/// zero boundary values (knot count in [4, 24]).
inline mbeta::Profile random_profile(Rng& rng, double span = 10.0,
                                     bool zero_ends = true) {
  const int n = rng.uniform_int(4, 24);
  std::vector<double> k;
  for (;;) {
    k.clear();
    for (int i = 0; i < n; ++i) k.push_back(rng.uniform(0.0, span));
    std::sort(k.begin(), k.end());
    bool ok = true;
    for (int i = 0; i + 1 < n; ++i)
      if (k[i + 1] - k[i] < 1e-3) ok = false;
    if (ok) break;
  }
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
  if (zero_ends) v.front() = 0.0;
  v.back() = 0.0;
  return mbeta::Profile(k, v);
}

/// Random radial profile: first knot at 0 (value free), zero tail value.
inline mbeta::Profile random_radial_profile(Rng& rng, double span = 10.0) {
  mbeta::Profile p = random_profile(rng, span, false);
  p.knots.front() = 0.0;
  return mbeta::Profile(p.knots, p.values);
}

}  // namespace mbeta_test
