#include <doctest.h>

#include <cmath>
#include <random>

#include "knotforge/deformation.hpp"
#include "oracles.hpp"

using namespace knotforge;

namespace {

FrequencySet f3544() {
  FrequencySet f;
  f.n1 = 3;
  f.n2 = 7;
  f.n3 = 44;
  f.phi = FrequencySet::default_phi(3, 7);
  f.psi = FrequencySet::auto_psi(44);
  return f;
}

double curve_gap(const FrequencySet& f, double t, double s) {
  const auto a = evaluate_shadow(f, t), b = evaluate_shadow(f, s);
  return std::max(std::fabs(a[0] - b[0]), std::fabs(a[1] - b[1]));
}

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("x / sin x and sin of a series") {
    const auto q = x_over_sin_x<double>(6);
    CHECK(q[0] == doctest::Approx(1.0));
    CHECK(q[2] == doctest::Approx(1.0 / 6));
    CHECK(q[4] == doctest::Approx(7.0 / 360));
    CHECK(q[1] == 0.0);
    const auto s = sin_series(Taylor<double>::linear(5, 0.0, 1.0));
    CHECK(s[1] == doctest::Approx(1.0));
    CHECK(s[3] == doctest::Approx(-1.0 / 6));
    CHECK(s[5] == doctest::Approx(1.0 / 120));
    const auto prod = s * q;  // sin x * x / sin x = x
    CHECK(prod[1] == doctest::Approx(1.0));
    for (int i : {0, 2, 3, 4, 5}) CHECK(std::fabs(prod[i]) < 1e-15);
  }

  TEST_CASE("division by a series with zero constant term throws") {
    const auto x = Taylor<double>::linear(3, 0.0, 1.0);
    CHECK_THROWS_AS(Taylor<double>::constant(3, 1.0) / x, Error);
  }

  TEST_CASE("power series evaluation uses derivative coefficients") {
    PowerSeries<double> p;
    p.c = {0.0, 1.0, 2.0, 6.0};  // x + x^2 + x^3
    CHECK(p.evaluate(0.5) == doctest::Approx(0.875));
  }
}

TEST_SUITE("deformation") {
  TEST_CASE("low order coefficients") {
    BasicInverseSpec<double> s;
    s.a = 1.3;
    s.r = 44.0 / 7;
    s.shift = 0.7;
    const auto u = lagrange_coefficients(s, 3);
    const double sp = std::sin(s.shift), cp = std::cos(s.shift), r = s.r;
    CHECK(u.c[0] == 0.0);
    CHECK(u.c[1] == doctest::Approx(s.a * sp).epsilon(1e-13));
    CHECK(u.c[2] == doctest::Approx(2 * s.a * s.a * r * sp * cp).epsilon(1e-13));
    CHECK(u.c[3] == doctest::Approx(std::pow(s.a, 3) * sp * (6 * r * r + (1 - 9 * r * r) * sp * sp)).epsilon(1e-12));
  }

  TEST_CASE("coefficients match finite differences of the solved inverse at 256 bits") {
    PrecisionScope scope(256);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ua(0.5, 2.0), ur(0.5, 7.0), us(0.3, 2.8);
    for (int trial = 0; trial < 4; ++trial) {
      BasicInverseSpec<HighReal> s;
      s.a = HighReal(ua(rng)) * (trial % 2 ? -1 : 1);
      s.r = HighReal(ur(rng));
      s.shift = HighReal(us(rng));
      const auto br = monotone_branch(s);
      const HighReal h = br.radius() / 64;
      const auto fd = oracle::solved_derivatives(s, 8, h, 16);
      const auto u = lagrange_coefficients(s, 8);
      for (int n = 1; n <= 8; ++n) {
        CAPTURE(trial);
        CAPTURE(n);
        const double rel = to_double(abs(fd[n] - u.c[n]) / abs(u.c[n]));
        CHECK(rel < 1e-6);
      }
    }
  }

  TEST_CASE("inverse property and monotonicity") {
    const auto f = f3544();
    const auto t = enumerate_nodes(f);
    const double eps0 = deformation_radius(f);
    CHECK(eps0 > 0.01);
    CHECK(eps0 < 1.0);
    for (std::size_t i = 0; i < t.nodes.size(); i += 5) {
      const auto s = make_inverse_spec<double>(f, t.nodes[i]);
      double prev = -1e300;
      for (int j = -4; j <= 4; ++j) {
        const double e = eps0 * j / 5.0;
        const double v = solve_node(s, e);
        CHECK(std::fabs(f_eval(s, v) - e) < 1e-12);
        if (s.a * std::sin(s.shift) > 0) {
          CHECK(v > prev);
          prev = v;
        }
      }
    }
  }

  TEST_CASE("nodal curve: zero grid, residuals, parallel = serial") {
    const auto f = f3544();
    const double eps0 = deformation_radius(f);
    const std::vector<double> grid{0.0, 0.3 * eps0, 0.9 * eps0};
    const auto c = nodal_curve(f, grid, 10);
    const auto cs = nodal_curve_serial(f, grid, 10);
    REQUIRE(c.entries.size() == 32);
    for (std::size_t i = 0; i < c.entries.size(); ++i) {
      const auto& e = c.entries[i];
      CHECK(e.samples[0].second == e.base);
      CHECK(e.series.c[0] == 0.0);
      CHECK(e.samples == cs.entries[i].samples);
      CHECK(e.series.c == cs.entries[i].series.c);
      if (i) CHECK(std::pair{c.entries[i - 1].node.k, c.entries[i - 1].node.l} < std::pair{e.node.k, e.node.l});
    }
    CHECK_THROWS_AS(nodal_curve(f, {1.01 * eps0}, 4), Error);
  }

  TEST_CASE("deformed nodes are double points of the deformed shadow") {
    const auto f = f3544();
    const double eps = 0.8 * deformation_radius(f);
    const auto t = deformed_nodes(f, eps);
    FrequencySet g = f;
    g.eps = eps;
    for (const auto& n : t.nodes) CHECK(curve_gap(g, n.t, n.s) < 1e-9);
    // the undeformed parameters are not
    const auto t0 = enumerate_nodes(f);
    double worst = 0;
    for (const auto& n : t0.nodes) worst = std::max(worst, curve_gap(g, n.t, n.s));
    CHECK(worst > 1e-4);
  }

  TEST_CASE("series against solver: degree N error shrinks like eps^(N+1)") {
    const auto f = f3544();
    const auto t = enumerate_nodes(f);
    const auto s = make_inverse_spec<double>(f, t.nodes[3]);
    const auto series = lagrange_coefficients(s, 4);
    const double e = 0.02 * deformation_radius(f);
    const double err1 = std::fabs(series.evaluate(e) - solve_node(s, e));
    const double err2 = std::fabs(series.evaluate(e / 2) - solve_node(s, e / 2));
    CHECK(err1 / err2 == doctest::Approx(32.0).epsilon(0.1));
  }

  TEST_CASE("parity structure in r of the lowest monomial") {
    // u_n(0) is a polynomial in r; its lowest power is r^0 for odd n and r^1
    // for even n (sin psi^n and cos psi sin^(n-1) psi r respectively).
    for (int n = 1; n <= 6; ++n) {
      BasicInverseSpec<double> s;
      s.a = 0.8;
      s.shift = 0.9;
      s.r = 1e-4;
      const double small = lagrange_coefficients(s, n).c[n];
      s.r = 2e-4;
      const double twice = lagrange_coefficients(s, n).c[n];
      const double sp = std::sin(0.9), cp = std::cos(0.9);
      CAPTURE(n);
      if (n % 2) {
        CHECK(small == doctest::Approx(twice).epsilon(1e-3));  // r^0 dominates
        const double c = oracle::c_coefficient(n);
        CHECK(small == doctest::Approx(c * std::pow(0.8, n) * std::pow(sp, n)).epsilon(1e-3));
      } else {
        CHECK(twice / small == doctest::Approx(2.0).epsilon(1e-3));  // r^1 dominates
        const double c = oracle::c_coefficient(n);
        CHECK(small == doctest::Approx(c * std::pow(0.8, n) * cp * std::pow(sp, n - 1) * 1e-4).epsilon(1e-3));
      }
    }
  }

  TEST_CASE("errors") {
    FrequencySet f = f3544();
    f.n3.reset();
    CHECK_THROWS_AS(deformation_radius(f), Error);
    BasicInverseSpec<double> s;
    s.shift = 0.0;
    CHECK_THROWS_AS(lagrange_coefficients(s, 3), Error);
    s.shift = 1.0;
    CHECK_THROWS_AS(lagrange_coefficients(s, 0), Error);
  }
}
