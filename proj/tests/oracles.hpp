#pragma once

// Independent reference computations used by the tests. None of these share
// code paths with the library routine they check.

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "knotforge/deformation.hpp"
#include "knotforge/diagram.hpp"
#include "knotforge/precision.hpp"

namespace oracle {

using knotforge::HighReal;

// Fornberg weights: w[d][j] so that f^(d)(z) ~ sum_j w[d][j] f(x[j]).
template <class T>
std::vector<std::vector<T>> fornberg(const T& z, const std::vector<T>& x, int m) {
  const int n = static_cast<int>(x.size()) - 1;
  std::vector<std::vector<T>> c(n + 1, std::vector<T>(m + 1, T(0)));  // c[node][order]
  T c1 = T(1), c4 = x[0] - z;
  c[0][0] = T(1);
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    T c2 = T(1);
    const T c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const T c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (T(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - T(k) * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<std::vector<T>> w(m + 1, std::vector<T>(n + 1));
  for (int k = 0; k <= m; ++k)
    for (int j = 0; j <= n; ++j) w[k][j] = c[j][k];
  return w;
}

// Derivatives v^(d)(0), d = 1..order, of the Newton-solved inverse, from
// 2M+1 equispaced samples in [-h, h] at the current HighReal precision.
inline std::vector<HighReal> solved_derivatives(const knotforge::BasicInverseSpec<HighReal>& spec, int order,
                                                const HighReal& h, int M) {
  const auto br = knotforge::monotone_branch(spec);
  std::vector<HighReal> x, v;
  for (int j = -M; j <= M; ++j) {
    const HighReal e = h * HighReal(j) / HighReal(M);
    x.push_back(e);
    v.push_back(knotforge::solve_node(spec, e, br));
  }
  const auto w = fornberg<HighReal>(HighReal(0), x, order);
  std::vector<HighReal> out(order + 1, HighReal(0));
  for (int d = 1; d <= order; ++d)
    for (std::size_t j = 0; j < x.size(); ++j) out[d] += w[d][j] * v[j];
  return out;
}

// [u^k] (u / sin u)^n by the trapezoid rule on |u| = 1.
inline long double x_over_sin_power_coeff(int n, int k, int points = 512) {
  using C = std::complex<long double>;
  const long double two_pi = 6.283185307179586476925286766559005768L;
  C acc = 0;
  for (int j = 0; j < points; ++j) {
    const C u = std::polar(1.0L, two_pi * j / points);
    acc += std::pow(u / std::sin(u), n) * std::pow(u, -k);
  }
  return (acc / static_cast<long double>(points)).real();
}

// c_n per the lowest-order structure: (n-1)! [u^(n-1)] q^n for odd n,
// n! [u^(n-2)] q^n for even n.
inline long double c_coefficient(int n) {
  long double f = 1;
  for (int i = 2; i < n; ++i) f *= i;
  if (n % 2) return f * x_over_sin_power_coeff(n, n - 1);
  return f * n * x_over_sin_power_coeff(n, n - 2);
}

// Kauffman bracket by direct state enumeration, loops traced by walking the
// smoothed edge graph. Result keyed by the exponent of A.
inline std::map<int, long long> bracket_state_sum(const std::vector<knotforge::PDCrossing>& pd) {
  const int c = static_cast<int>(pd.size());
  std::map<int, long long> out;
  if (c == 0) {
    out[0] = 1;
    return out;
  }
  const int n = 2 * c;
  // poly of d = -A^2 - A^-2 raised to L-1, computed by repeated multiplication
  auto dpow = [](int e) {
    std::map<int, long long> p{{0, 1}};
    for (int i = 0; i < e; ++i) {
      std::map<int, long long> q;
      for (auto [k, v] : p) {
        q[k + 2] -= v;
        q[k - 2] -= v;
      }
      p = q;
    }
    return p;
  };
  for (long st = 0; st < (1L << c); ++st) {
    // each label sits at two crossing slots; adjacency of slots inside a crossing
    std::vector<std::vector<int>> adj(n + 1);
    int a_count = 0;
    for (int i = 0; i < c; ++i) {
      const auto& x = pd[i];
      const bool a_smooth = !(st >> i & 1L);
      a_count += a_smooth;
      const std::array<std::pair<int, int>, 2> joins =
          a_smooth ? std::array<std::pair<int, int>, 2>{{{x[0], x[1]}, {x[2], x[3]}}}
                   : std::array<std::pair<int, int>, 2>{{{x[0], x[3]}, {x[1], x[2]}}};
      for (auto [p, q] : joins) {
        adj[p].push_back(q);
        adj[q].push_back(p);
      }
    }
    std::vector<bool> seen(n + 1, false);
    int loops = 0;
    for (int l = 1; l <= n; ++l) {
      if (seen[l]) continue;
      ++loops;
      std::vector<int> stack{l};
      seen[l] = true;
      while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int w : adj[u])
          if (!seen[w]) {
            seen[w] = true;
            stack.push_back(w);
          }
      }
    }
    const int shift = a_count - (c - a_count);
    for (auto [k, v] : dpow(loops - 1)) out[k + shift] += v;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

// Jones from the oracle bracket: (-A^3)^-w <D>, t = A^-4; keyed by the t exponent.
inline std::map<int, long long> jones_state_sum(const std::vector<knotforge::PDCrossing>& pd, int writhe) {
  std::map<int, long long> out;
  for (auto [e, v] : bracket_state_sum(pd)) {
    const int ae = e - 3 * writhe;
    const long long s = (writhe % 2) ? -v : v;
    out[-ae / 4] += s;  // exponents are multiples of 4 for knots
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace oracle
