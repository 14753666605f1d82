#pragma once

// Truncated Taylor series a[0] + a[1] x + ... + a[N] x^N over a real scalar
// type (double, long double, mpfr_float). Every operation truncates at the
// order of its left operand.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "knotforge/errors.hpp"

namespace knotforge {

template <class T>
class Taylor {
public:
  Taylor() = default;
  explicit Taylor(std::size_t order) : a_(order + 1, T(0)) {}
  Taylor(std::size_t order, std::vector<T> coeffs) : a_(std::move(coeffs)) { a_.resize(order + 1, T(0)); }

  static Taylor constant(std::size_t order, const T& c) {
    Taylor s(order);
    s.a_[0] = c;
    return s;
  }
  // c0 + c1 x
  static Taylor linear(std::size_t order, const T& c0, const T& c1) {
    Taylor s(order);
    s.a_[0] = c0;
    if (order >= 1) s.a_[1] = c1;
    return s;
  }

  std::size_t order() const { return a_.size() - 1; }
  const T& operator[](std::size_t i) const { return a_[i]; }
  T& operator[](std::size_t i) { return a_[i]; }
  const std::vector<T>& coefficients() const { return a_; }

  Taylor& operator+=(const Taylor& o) {
    for (std::size_t i = 0; i <= std::min(order(), o.order()); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Taylor& operator-=(const Taylor& o) {
    for (std::size_t i = 0; i <= std::min(order(), o.order()); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Taylor& operator*=(const T& c) {
    for (auto& v : a_) v *= c;
    return *this;
  }

  friend Taylor operator+(Taylor l, const Taylor& r) { return l += r; }
  friend Taylor operator-(Taylor l, const Taylor& r) { return l -= r; }
  friend Taylor operator*(Taylor l, const T& c) { return l *= c; }

  friend Taylor operator*(const Taylor& l, const Taylor& r) {
    const std::size_t n = l.order();
    Taylor out(n);
    for (std::size_t i = 0; i <= n; ++i) {
      if (l.a_[i] == 0) continue;
      for (std::size_t j = 0; j <= std::min(r.order(), n - i); ++j) out.a_[i + j] += l.a_[i] * r.a_[j];
    }
    return out;
  }

  // Requires a nonzero constant term in the divisor.
  friend Taylor operator/(const Taylor& num, const Taylor& den) {
    if (den.a_[0] == 0) fail("SeriesDivision", "divisor series has zero constant term");
    const std::size_t n = num.order();
    Taylor q(n);
    for (std::size_t i = 0; i <= n; ++i) {
      T acc = num.a_[i];
      for (std::size_t j = 1; j <= std::min(i, den.order()); ++j) acc -= den.a_[j] * q.a_[i - j];
      q.a_[i] = acc / den.a_[0];
    }
    return q;
  }

  Taylor pow(unsigned n) const {
    Taylor result = constant(order(), T(1));
    Taylor base = *this;
    while (n) {
      if (n & 1u) result = result * base;
      n >>= 1u;
      if (n) base = base * base;
    }
    return result;
  }

  // Drops the constant term and shifts down: (f - f0)/x, order reduced by one.
  Taylor shift_down() const {
    Taylor out(order() == 0 ? 0 : order() - 1);
    for (std::size_t i = 1; i <= order(); ++i) out.a_[i - 1] = a_[i];
    return out;
  }

  // n-th derivative at 0: n! a[n].
  T derivative_at_zero(std::size_t n) const {
    T f = T(1);
    for (std::size_t i = 2; i <= n; ++i) f *= T(static_cast<long>(i));
    return n <= order() ? a_[n] * f : T(0);
  }

private:
  std::vector<T> a_{T(0)};
};

// sin(h) and cos(h) of a series h, via s' = c h', c' = -s h'.
template <class T>
std::pair<Taylor<T>, Taylor<T>> sin_cos(const Taylor<T>& h) {
  using std::cos;
  using std::sin;
  const std::size_t n = h.order();
  Taylor<T> s(n), c(n);
  s[0] = sin(h[0]);
  c[0] = cos(h[0]);
  for (std::size_t k = 1; k <= n; ++k) {
    T sk = T(0), ck = T(0);
    for (std::size_t j = 1; j <= k; ++j) {
      const T w = T(static_cast<long>(j)) * h[j];
      sk += w * c[k - j];
      ck -= w * s[k - j];
    }
    s[k] = sk / T(static_cast<long>(k));
    c[k] = ck / T(static_cast<long>(k));
  }
  return {s, c};
}

template <class T>
Taylor<T> sin_series(const Taylor<T>& h) { return sin_cos(h).first; }

// x / sin x to the given order (even series, positive coefficients).
template <class T>
Taylor<T> x_over_sin_x(std::size_t order) {
  // sin x / x = sum (-1)^j x^{2j} / (2j+1)!
  Taylor<T> sinc(order);
  T term = T(1);
  for (std::size_t i = 0; i <= order; i += 2) {
    sinc[i] = term;
    term = -term / (T(static_cast<long>(i + 2)) * T(static_cast<long>(i + 3)));
  }
  return Taylor<T>::constant(order, T(1)) / sinc;
}

// Series in "derivative" normalization: value = sum c[n] x^n / n!.
template <class T>
struct PowerSeries {
  std::vector<T> c;  // c[n] = n-th derivative at 0

  std::size_t order() const { return c.empty() ? 0 : c.size() - 1; }

  T evaluate(const T& x) const {
    T acc = T(0), term = T(1);
    for (std::size_t n = 0; n < c.size(); ++n) {
      if (n > 0) term = term * x / T(static_cast<long>(n));
      acc += c[n] * term;
    }
    return acc;
  }
};

}  // namespace knotforge
