#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace curvtri {

// Portable variates built directly on the engine output; the standard
// distributions are implementation-defined and would break cross-platform
// reproducibility of seeded runs.

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& eng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(eng);
}

/// Box-Muller.
inline double standard_normal(std::mt19937_64& eng) {
  double u1 = uniform01(eng);
  while (u1 <= 0) u1 = uniform01(eng);
  const double u2 = uniform01(eng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace curvtri
