#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <ios>
#include <string>
#include <type_traits>

namespace knotforge {

// Runtime-precision MPFR real; expression templates off so that it behaves
// like a plain value type inside the generic series code.
using HighReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                               boost::multiprecision::et_off>;

inline unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

// Working precision of freshly constructed HighReal values.
inline unsigned current_precision_bits() {
  HighReal probe(1);
  return static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
}

// Sets the default MPFR precision for new HighReal values for the lifetime
// of the scope. Not thread-local: open scopes only from serial code.
class PrecisionScope {
public:
  explicit PrecisionScope(unsigned bits) : saved_(HighReal::default_precision()) {
    HighReal::default_precision(bits_to_digits10(bits));
  }
  ~PrecisionScope() { HighReal::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
  unsigned saved_;
};

// KNOTFORGE_PRECISION overrides the requested bit count when set.
inline unsigned precision_from_env(unsigned fallback) {
  if (const char* v = std::getenv("KNOTFORGE_PRECISION")) {
    char* end = nullptr;
    const long bits = std::strtol(v, &end, 10);
    if (end != v && *end == '\0' && bits >= 53 && bits <= 65536) return static_cast<unsigned>(bits);
  }
  return fallback;
}

// Relative rounding unit of T at its current precision.
template <class T>
T unit_roundoff() {
  if constexpr (std::is_same_v<T, HighReal>) {
    return boost::multiprecision::ldexp(HighReal(1), -static_cast<int>(current_precision_bits()));
  } else {
    return std::numeric_limits<T>::epsilon();
  }
}

template <class T>
T pi_value() {
  if constexpr (std::is_same_v<T, HighReal>) {
    HighReal p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
  } else {
    return static_cast<T>(3.141592653589793238462643383279502884L);
  }
}

inline double to_double(const HighReal& x) { return x.convert_to<double>(); }
inline double to_double(double x) { return x; }
inline double to_double(long double x) { return static_cast<double>(x); }

inline std::string to_sci_string(const HighReal& x, int digits = 20) {
  return x.str(digits, std::ios_base::scientific);
}

}  // namespace knotforge
