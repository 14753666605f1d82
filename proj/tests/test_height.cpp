#include <doctest.h>

#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "knotforge/deformation.hpp"
#include "knotforge/errors.hpp"
#include "knotforge/height.hpp"

using namespace knotforge;

namespace {

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

// Smallest n with gcd(n, n1) = 1 and a grid phase j / (64 n) realizing the
// signs, by plain evaluation of the cosines.
std::pair<long long, double> brute_force(const ParameterPairs& nodes, const SignAssignment& a, int n1, long long nmax,
                                         double margin_min) {
  const double two_pi = 2 * M_PI;
  for (long long n = 1; n <= nmax; ++n) {
    if (std::gcd(n, static_cast<long long>(n1)) != 1) continue;
    for (int j = 0; j < 64; ++j) {
      const double tau = j / (64.0 * n);
      bool ok = true;
      for (std::size_t i = 0; ok && i < nodes.size(); ++i) {
        const double d = std::cos(two_pi * n * (nodes[i].first + tau)) - std::cos(two_pi * n * (nodes[i].second + tau));
        ok = d * a.signs[i] >= margin_min;
      }
      if (ok) return {n, tau};
    }
  }
  return {-1, 0.0};
}

}  // namespace

TEST_SUITE("height") {
  TEST_CASE("sign strings") {
    const auto a = SignAssignment::parse("+-+ -");
    CHECK(a.signs == std::vector<int>{1, -1, 1, -1});
    CHECK(a.str() == "+-+-");
    CHECK(code_of([] { SignAssignment::parse("+x"); }) == "InvalidSigns");
  }

  TEST_CASE("trivial instances") {
    const ParameterPairs one{{0.16, 0.49}};
    const auto h = kronecker_search(one, SignAssignment::parse("+"), 5);
    CHECK(h.n4 == 1);
    CHECK(h.tau == 0.0);
    const auto e = kronecker_search({}, SignAssignment{}, 5);
    CHECK(e.n4 == 1);
  }

  TEST_CASE("flipping a sign is reported as a mismatch") {
    const ParameterPairs nodes{{0.16, 0.49}, {0.05, 0.71}, {0.33, 0.9}};
    auto a = SignAssignment::parse("+-+");
    const auto h = kronecker_search(nodes, a, 3);
    CHECK(verify_signs(h.n4, h.tau, nodes, a).ok);
    a.signs[1] = -a.signs[1];
    const auto chk = verify_signs(h.n4, h.tau, nodes, a);
    CHECK_FALSE(chk.ok);
    CHECK(chk.mismatches == std::vector<std::size_t>{1});
  }

  TEST_CASE("agrees with brute force; serial = parallel; coprime; Lipschitz margin") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 25; ++trial) {
      ParameterPairs nodes;
      SignAssignment a;
      const int m = 1 + trial % 6;
      for (int i = 0; i < m; ++i) {
        nodes.push_back({u(rng), u(rng)});
        a.signs.push_back(u(rng) < 0.5 ? 1 : -1);
      }
      const int n1 = 3 + 2 * (trial % 3);
      HeightOptions opts;
      opts.n_max = 20000;
      opts.chunk = 64;  // several chunks even for small answers
      const auto h = kronecker_search(nodes, a, n1, opts);
      const auto hs = kronecker_search_serial(nodes, a, n1, opts);
      CAPTURE(trial);
      CHECK(h.n4 == hs.n4);
      CHECK(h.tau == hs.tau);
      CHECK(std::gcd(h.n4, static_cast<long long>(n1)) == 1);
      const auto [bn, btau] = brute_force(nodes, a, n1, h.n4, opts.margin_min);
      CHECK(bn == h.n4);
      CHECK(btau == doctest::Approx(h.tau));
      const auto chk = verify_signs(h.n4, h.tau, nodes, a);
      REQUIRE(chk.ok);
      CHECK(chk.margin == doctest::Approx(h.margin));
      // each difference moves by at most 4 pi n4 |dtau|
      const double dtau = 0.9 * chk.margin / (4 * M_PI * h.n4);
      CHECK(verify_signs(h.n4, h.tau + dtau, nodes, a).ok);
      CHECK(verify_signs(h.n4, h.tau - dtau, nodes, a).ok);
    }
  }

  TEST_CASE("screening strategy on companion nodes s = t + k/n1") {
    // the setting of the existence argument: independent t_i, companions at k/n1
    ParameterPairs nodes;
    for (int p : {2, 3, 5, 7}) {
      const double t = std::sqrt(static_cast<double>(p)) - std::floor(std::sqrt(static_cast<double>(p)));
      nodes.push_back({t, t + (1 + p % 2) / 3.0});
    }
    const auto a = SignAssignment::parse("+-++");
    HeightOptions opts;
    opts.strategy = HeightStrategy::Screen;
    opts.n_max = 1000000;
    const auto h = kronecker_search(nodes, a, 3, opts);
    CHECK(verify_signs(h.n4, h.tau, nodes, a).ok);
    CHECK(h.n4 % 3 != 0);
    const auto hs = kronecker_search_serial(nodes, a, 3, opts);
    CHECK(h.n4 == hs.n4);
    CHECK(h.tau == hs.tau);
  }

  TEST_CASE("verify on a frequency set") {
    FrequencySet f;
    f.n1 = 3;
    f.n2 = 5;
    f.phi = FrequencySet::default_phi(3, 5);
    const auto nodes = node_parameters(enumerate_nodes(f));
    CHECK(code_of([&] { verify_signs(f, nodes, SignAssignment{std::vector<int>(nodes.size(), 1)}); }) ==
          "MissingFrequency");
    f.n4 = 7;
    f.tau = 0.01;
    const auto chk = verify_signs(f, nodes, SignAssignment{std::vector<int>(nodes.size(), 1)});
    CHECK(chk.realized.size() == nodes.size());
  }

  TEST_CASE("errors") {
    const ParameterPairs nodes{{0.1, 0.6}, {0.1, 0.6}};  // same node, opposite signs
    HeightOptions opts;
    opts.n_max = 1000;
    CHECK(code_of([&] { kronecker_search(nodes, SignAssignment::parse("+-"), 3, opts); }) == "BudgetExhausted");
    CHECK(code_of([&] { kronecker_search({{0.2, 1.2}}, SignAssignment::parse("+"), 3); }) == "DegenerateNode");
    CHECK(code_of([&] { kronecker_search(nodes, SignAssignment::parse("+"), 3); }) == "InvalidSigns");
    opts.n_max = 10;
    opts.tau_grid = 32;
    CHECK(code_of([&] { kronecker_search(nodes, SignAssignment::parse("++"), 3, opts); }) == "InvalidArgument");
  }
}
