#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "qgt/quench.hpp"

namespace testutil {

inline constexpr double kPi = std::numbers::pi;

// Seeded draws over the parameter box explored by the tests, with a
// rejection ball around the gap-closing point (m, |k|) = (1, pi).
struct Draw {
  std::mt19937_64 rng;

  explicit Draw(std::uint64_t seed) : rng(seed) {}

  double uniform(double a, double b) {
    std::uniform_real_distribution<double> d(a, b);
    return d(rng);
  }

  double m() { return uniform(0.1, 2.0); }

  static double gap_distance(double m, double k) {
    return std::hypot(m - 1.0, kPi - std::abs(k));
  }

  double k_away(double m_i, double m_f, double margin = 0.05) {
    for (;;) {
      const double k = uniform(-kPi, kPi);
      if (gap_distance(m_i, k) >= margin && gap_distance(m_f, k) >= margin) {
        return k;
      }
    }
  }

  qgt::QuenchProtocol proto() { return {m(), m(), 1.0}; }
};

}  // namespace testutil
