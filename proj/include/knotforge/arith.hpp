#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>

namespace knotforge {

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

inline bool coprime(std::int64_t a, std::int64_t b) { return std::gcd(a, b) == 1; }

// Non-negative residue of a modulo m (m > 0).
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// cos(2*pi*x) with the argument reduced to [-1/2, 1/2] first, so that large
// frequency multiples keep their fractional accuracy.
inline long double cos_turns(long double x) {
  constexpr long double two_pi = 6.283185307179586476925286766559005768L;
  return std::cos(two_pi * (x - std::nearbyint(x)));
}

inline long double sin_turns(long double x) {
  constexpr long double two_pi = 6.283185307179586476925286766559005768L;
  return std::sin(two_pi * (x - std::nearbyint(x)));
}

// Representative of x modulo 1 in [0, 1).
inline double frac01(double x) {
  double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

inline int sign_of(double x) { return (x > 0) - (x < 0); }

}  // namespace knotforge
