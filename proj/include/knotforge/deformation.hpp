#pragma once

// Node parameters of the deformed shadow
//
//   x = cos 2 pi n1 t,   y = cos 2 pi n2 (t + phi) + eps cos 2 pi n3 (t + phi + psi).
//
// Near a node of the undeformed curve write t = base + v / (2 pi n2). The
// coincidence equations collapse to eps = f(v) with
//
//   f(v) = sin v / (a sin(r v + shift)),   r = n3 / n2,
//
// where a and shift depend on the node (k, l) and its type. The node moves
// along v(eps), the local inverse of f, whose Taylor coefficients come from
// Lagrange inversion: v^(n)(0) = (n-1)! [w^(n-1)] (w / f(w))^n.

#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "knotforge/arith.hpp"
#include "knotforge/errors.hpp"
#include "knotforge/lissajous.hpp"
#include "knotforge/precision.hpp"
#include "knotforge/series.hpp"

namespace knotforge {

template <class T>
struct BasicInverseSpec {
  T a = T(1);
  T r = T(1);
  T shift = T(0);  // radians
  int n2 = 1;      // t = base + v / (2 pi n2)
  int n3 = 1;
  int k = 0;
  int l = 0;
  NodeType type = NodeType::I;
  double base = 0.0;
};

using InverseSpec = BasicInverseSpec<double>;

constexpr double kPoleThreshold = 1e-12;

namespace detail {

// sin(pi p / q + extra) with p reduced modulo 2q first.
template <class T>
T sin_pi_ratio_plus(long long p, long long q, const T& extra) {
  using std::sin;
  const long long m = ((p % (2 * q)) + 2 * q) % (2 * q);
  return sin(pi_value<T>() * T(m) / T(q) + extra);
}

template <class T>
T reduce_angle(const T& x) {
  using std::floor;
  const T two_pi = 2 * pi_value<T>();
  T y = x - two_pi * floor(x / two_pi);
  if (y > pi_value<T>()) y -= two_pi;
  return y;
}

}  // namespace detail

// a and shift for a node of L_eps(n1, n2, n3, phi, psi). Throws DegenerateNode
// when a vanishes or its denominator does, NearPole when sin(shift) = 0.
template <class T>
BasicInverseSpec<T> make_inverse_spec(const FrequencySet& freq, const Node& node) {
  using std::abs;
  if (!freq.n3) fail("MissingFrequency", "deformation needs n3");
  const int n1 = freq.n1, n2 = freq.n2, n3 = *freq.n3;
  BasicInverseSpec<T> spec;
  spec.n2 = n2;
  spec.n3 = n3;
  spec.r = T(n3) / T(n2);
  spec.k = node.k;
  spec.l = node.l;
  spec.type = node.type;
  spec.base = node.t;

  const T two_pi = 2 * pi_value<T>();
  const T sign = (node.l % 2 == 1) ? T(1) : T(-1);  // (-1)^(l+1)
  T num, den;
  if (node.type == NodeType::I) {
    num = detail::sin_pi_ratio_plus<T>(static_cast<long long>(n3) * node.k, n1, T(0));
    den = detail::sin_pi_ratio_plus<T>(static_cast<long long>(n2) * node.k, n1, T(0));
    spec.shift = detail::reduce_angle(pi_value<T>() * T(static_cast<long long>(n3) * node.l % (2 * n2)) / T(n2) +
                                      two_pi * T(n3) * T(freq.psi));
  } else {
    num = detail::sin_pi_ratio_plus<T>(static_cast<long long>(n3) * node.k, n1,
                                       two_pi * T(n3) * (T(freq.phi) + T(freq.psi)));
    den = detail::sin_pi_ratio_plus<T>(static_cast<long long>(n2) * node.k, n1, two_pi * T(n2) * T(freq.phi));
    spec.shift = detail::reduce_angle(-pi_value<T>() * T(static_cast<long long>(n3) * node.l % (2 * n2)) / T(n2));
  }
  const std::string where = "(" + std::to_string(node.k) + "," + std::to_string(node.l) + ")";
  if (abs(den) < T(kPoleThreshold) || abs(num) < T(kPoleThreshold))
    fail("DegenerateNode", "amplitude coefficient of node " + where + " vanishes or is undefined");
  spec.a = sign * num / den;
  using std::sin;
  if (abs(sin(spec.shift)) < T(kPoleThreshold))
    fail("NearPole", "node " + where + ": sin(shift) vanishes at u = 0");
  return spec;
}

template <class T>
T f_eval(const BasicInverseSpec<T>& spec, const T& v) {
  using std::abs;
  using std::sin;
  const T d = sin(spec.r * v + spec.shift);
  if (abs(d) < T(kPoleThreshold)) fail("NearPole", "denominator of f below threshold");
  return sin(v) / (spec.a * d);
}

template <class T>
T f_prime(const BasicInverseSpec<T>& spec, const T& v) {
  using std::cos;
  using std::sin;
  const T arg = spec.r * v + spec.shift;
  const T d = sin(arg);
  return (cos(v) * d - spec.r * sin(v) * cos(arg)) / (spec.a * d * d);
}

// u_n = v^(n)(0) for n = 0..order (u_0 = 0).
template <class T>
PowerSeries<T> lagrange_coefficients(const BasicInverseSpec<T>& spec, std::size_t order) {
  if (order < 1) fail("InvalidOrder", "series order must be at least 1");
  using std::abs;
  using std::sin;
  if (abs(sin(spec.shift)) < T(kPoleThreshold)) fail("NearPole", "sin(shift) vanishes at u = 0");
  const std::size_t n = order - 1;
  // g(w) = w / f(w) = a sin(r w + shift) * (w / sin w)
  Taylor<T> g = sin_series(Taylor<T>::linear(n, spec.shift, spec.r)) * x_over_sin_x<T>(n);
  g *= spec.a;

  PowerSeries<T> out;
  out.c.assign(order + 1, T(0));
  Taylor<T> gp = Taylor<T>::constant(n, T(1));
  T fact = T(1);  // (j-1)!
  for (std::size_t j = 1; j <= order; ++j) {
    gp = gp * g;
    if (j > 1) fact *= T(static_cast<long>(j - 1));
    out.c[j] = fact * gp[j - 1];
  }
  return out;
}

// The monotone branch of f through v = 0, bounded on each side by the
// first critical point or pole of f (or |v| = pi). The validated radius is
// the eps reached halfway to the nearer end.
template <class T>
struct Branch {
  T lo = T(0), hi = T(0);
  bool lo_pole = false, hi_pole = false;
  T f_lo = T(0), f_hi = T(0);  // limits at the ends (unused on a pole side)
  bool increasing = true;

  T f_lo_half = T(0), f_hi_half = T(0);  // f at lo/2 and hi/2

  // eps reached at half the distance to the nearer end, on the worse side.
  T radius() const {
    using std::abs;
    const T a = abs(f_lo_half), b = abs(f_hi_half);
    return a < b ? a : b;
  }
};

template <class T>
Branch<T> monotone_branch(const BasicInverseSpec<T>& spec) {
  using std::abs;
  using std::sin;
  const T pi = pi_value<T>();
  const T rr = spec.r > T(1) ? spec.r : T(1);
  const T h = pi / (T(512) * rr);
  const T fp0 = f_prime(spec, T(0));

  Branch<T> br;
  br.increasing = fp0 > 0;
  for (int dir : {+1, -1}) {
    T prev = T(0);
    T end = T(dir) * pi;
    bool pole = false;
    for (int i = 1;; ++i) {
      T v = T(dir) * h * T(i);
      bool past = abs(v) >= pi;
      if (past) v = T(dir) * pi;
      const T den_prev = sin(spec.r * prev + spec.shift);
      const T den = sin(spec.r * v + spec.shift);
      const bool pole_cross = (den_prev > 0) != (den > 0);
      const bool crit_cross = !pole_cross && ((f_prime(spec, v) > 0) != (fp0 > 0));
      if (pole_cross || crit_cross) {
        T a = prev, b = v;
        for (int it = 0; it < 200; ++it) {
          T mid = (a + b) / 2;
          if (mid == a || mid == b) break;
          const bool flip = pole_cross ? ((sin(spec.r * mid + spec.shift) > 0) != (den_prev > 0))
                                       : ((f_prime(spec, mid) > 0) != (fp0 > 0));
          if (flip) b = mid; else a = mid;
        }
        end = a;
        pole = pole_cross;
        break;
      }
      if (past) {
        end = v;
        break;
      }
      prev = v;
    }
    if (dir > 0) {
      br.hi = end;
      br.hi_pole = pole;
      if (!pole) br.f_hi = sin(end) / (spec.a * sin(spec.r * end + spec.shift));
      br.f_hi_half = f_eval(spec, end / 2);
    } else {
      br.lo = end;
      br.lo_pole = pole;
      if (!pole) br.f_lo = sin(end) / (spec.a * sin(spec.r * end + spec.shift));
      br.f_lo_half = f_eval(spec, end / 2);
    }
  }
  return br;
}

template <class T>
unsigned current_bits() {
  if constexpr (std::is_same_v<T, HighReal>) return current_precision_bits();
  else return static_cast<unsigned>(std::numeric_limits<T>::digits);
}

// v with f(v) = eps on the branch through 0: safeguarded Newton seeded by the
// cubic Lagrange polynomial. Throws RadiusExceeded when eps is not attained
// on the branch, NoConvergence when Newton stalls.
template <class T>
T solve_node(const BasicInverseSpec<T>& spec, const T& eps, const Branch<T>& br) {
  using std::abs;
  if (eps == 0) return T(0);
  const bool positive_side = (eps > 0) == br.increasing;
  const T end = positive_side ? br.hi : br.lo;
  const bool end_pole = positive_side ? br.hi_pole : br.lo_pole;
  const T f_end = positive_side ? br.f_hi : br.f_lo;
  if (!end_pole && abs(eps) >= abs(f_end))
    fail("RadiusExceeded", "eps lies beyond the fold of the local inverse");

  T lo = positive_side ? T(0) : end;
  T hi = positive_side ? end : T(0);
  // F(v) = f(v) - eps is negative at lo and positive at hi when increasing.
  const T sgn = br.increasing ? T(1) : T(-1);

  const PowerSeries<T> cubic = lagrange_coefficients(spec, 3);
  T v = cubic.evaluate(eps);
  if (!(v > lo && v < hi)) v = (lo + hi) / 2;

  const T tol = std::is_same_v<T, double> ? T(1e-14) : T(64) * unit_roundoff<T>();
  int newton_steps = 0;
  for (int it = 0; it < 50 + 4 * static_cast<int>(current_bits<T>()); ++it) {
    const T F = f_eval(spec, v) - eps;
    if (F == 0) return v;
    if (sgn * F < 0) lo = v; else hi = v;
    const T dF = f_prime(spec, v);
    T next;
    bool newton = newton_steps < 50 && dF != 0;
    if (newton) {
      next = v - F / dF;
      if (!(next > lo && next < hi)) newton = false;
    }
    if (newton) ++newton_steps;
    else next = (lo + hi) / 2;
    const T step = abs(next - v);
    v = next;
    const T scale = abs(v) > T(1) ? abs(v) : T(1);
    if (newton && step <= tol * scale) return v;
    if (hi - lo <= tol * scale) return v;
  }
  fail("NoConvergence", "Newton iteration for the node parameter did not converge");
}

template <class T>
T solve_node(const BasicInverseSpec<T>& spec, const T& eps) {
  return solve_node(spec, eps, monotone_branch(spec));
}

// Parameter t of the deformed node from its normalized displacement v.
inline double node_parameter(const InverseSpec& spec, long double v) {
  constexpr long double two_pi = 6.283185307179586476925286766559005768L;
  return frac01(static_cast<double>(static_cast<long double>(spec.base) + v / (two_pi * spec.n2)));
}

// Companion parameter s of a (possibly deformed) node with parameter t.
inline double companion_parameter(int n1, const Node& node, double t) {
  const double shift = static_cast<double>(node.k) / n1;
  return node.type == NodeType::I ? frac01(t + shift) : frac01(-t + shift);
}

struct NodalEntry {
  Node node;
  InverseSpec spec;
  double base = 0.0;
  PowerSeries<double> series;  // derivatives of v, not of t
  double radius = 0.0;         // eps radius of this node's branch
  std::vector<std::pair<double, double>> samples;  // (eps, t(eps))
};

struct NodalCurve {
  FrequencySet freq;
  double eps0 = 0.0;
  std::vector<NodalEntry> entries;  // lexicographic in (k, l)

  // Parameters (t_i, s_i) of every node at sample index j.
  std::vector<std::pair<double, double>> parameters_at(std::size_t j) const;
};

// eps0 = min over nodes of the branch radius.
double deformation_radius(const FrequencySet& freq);

// Parallel over nodes; result identical to nodal_curve_serial.
NodalCurve nodal_curve(const FrequencySet& freq, const std::vector<double>& eps_grid, std::size_t order);
NodalCurve nodal_curve_serial(const FrequencySet& freq, const std::vector<double>& eps_grid, std::size_t order);

// Node table of the deformed shadow at amplitude eps: same (k, l) labels,
// parameters solved from the local inverses.
NodeTable deformed_nodes(const FrequencySet& freq, double eps);

}  // namespace knotforge
