#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "knotforge/curve.hpp"
#include "knotforge/diagram.hpp"
#include "knotforge/errors.hpp"
#include "knotforge/lissajous.hpp"

using namespace knotforge;

namespace {

FrequencySet shadow(int n1, int n2, double phi = 0.0) {
  FrequencySet f;
  f.n1 = n1;
  f.n2 = n2;
  f.phi = phi > 0 ? phi : FrequencySet::default_phi(n1, n2);
  return f;
}

double coincidence(const FrequencySet& f, const Node& n) {
  const auto a = evaluate_shadow(f, n.t), b = evaluate_shadow(f, n.s);
  return std::max(std::fabs(a[0] - b[0]), std::fabs(a[1] - b[1]));
}

}  // namespace

TEST_SUITE("lissajous") {
  TEST_CASE("node counts of (3,5) and (4,5)") {
    const auto t35 = enumerate_nodes(shadow(3, 5, 0.01));
    CHECK(t35.nodes.size() == 22);
    CHECK(std::count_if(t35.nodes.begin(), t35.nodes.end(), [](const Node& n) { return n.type == NodeType::I; }) == 10);
    CHECK(enumerate_nodes(shadow(4, 5)).nodes.size() == 31);
  }

  TEST_CASE("type II closed form") {
    const auto t = enumerate_nodes(shadow(3, 5, 0.01));
    const auto i = t.find(2, 1);
    REQUIRE(i);
    const Node& n = t.nodes[*i];
    CHECK(n.type == NodeType::II);
    CHECK(n.t == doctest::Approx(0.5 * (2.0 / 3 - 1.0 / 5)).epsilon(1e-14));
    CHECK(n.s == doctest::Approx(-n.t + 2.0 / 3).epsilon(1e-14));
  }

  TEST_CASE("errors") {
    CHECK_THROWS_WITH_AS(enumerate_nodes(shadow(4, 6)), "gcd(n1, n2) = 2 != 1", Error);
    FrequencySet f = shadow(3, 5);
    f.phi = 0.0;
    try {
      enumerate_nodes(f);
      FAIL("expected PhaseOutOfRange");
    } catch (const Error& e) {
      CHECK(e.code() == "PhaseOutOfRange");
    }
    f.phi = 1.0 / 60 + 1e-6;  // just past 1/(4 n1 n2)
    CHECK_THROWS_AS(enumerate_nodes(f), Error);
  }

  TEST_CASE("counts, partition and coincidence for odd pairs up to 13") {
    for (int n1 = 3; n1 <= 13; n1 += 2)
      for (int n2 = n1 + 2; n2 <= 13; n2 += 2) {
        if (std::gcd(n1, n2) != 1) continue;
        const auto f = shadow(n1, n2);
        const auto t = enumerate_nodes(f);
        CAPTURE(n1);
        CAPTURE(n2);
        CHECK(t.nodes.size() == static_cast<std::size_t>(2 * n1 * n2 - n1 - n2));
        long type_one = 0;
        std::set<std::pair<int, int>> labels;
        for (const auto& n : t.nodes) {
          type_one += n.type == NodeType::I;
          labels.insert({n.k, n.l});
          CHECK(coincidence(f, n) < 1e-9);
          CHECK(std::fabs(n.t - n.s) > 1e-9);
          CHECK(n.k > 0);
          CHECK(n.l > 0);
          CHECK(n2 * n.k + n1 * n.l < 2 * n1 * n2);
        }
        CHECK(type_one == n1 * n2 - n2);
        CHECK(labels.size() == t.nodes.size());
      }
  }

  TEST_CASE("node table agrees with a numeric sweep of the shadow") {
    for (auto [n1, n2] : {std::pair{3, 5}, {2, 3}, {4, 7}}) {
      const auto f = shadow(n1, n2);
      const auto table = enumerate_nodes(f);
      FourierKnot112 k;
      k.coords[0] = {{1.0, n1, 0.0}};
      k.coords[1] = {{1.0, n2, n2 * f.phi}};
      k.coords[2] = {{0.0, 1, 0.0}};
      const auto hits = shadow_intersections(k);
      REQUIRE(hits.size() == table.nodes.size());
      for (const auto& n : table.nodes) {
        const double a = std::min(n.t, n.s), b = std::max(n.t, n.s);
        bool found = false;
        for (const auto& h : hits) found = found || (std::fabs(h.t - a) < 1e-9 && std::fabs(h.s - b) < 1e-9);
        CHECK(found);
      }
    }
  }

  TEST_CASE("coupling is a perfect matching onto the representative domains") {
    for (auto [n1, n2] : {std::pair{3, 5}, {3, 7}, {5, 7}, {3, 11}, {7, 11}}) {
      const auto t = enumerate_nodes(shadow(n1, n2));
      const auto p = couple_nodes(t);
      CHECK(p.pairs.size() == static_cast<std::size_t>(n1 * n2 - (n1 + n2) / 2));
      std::vector<int> hits(t.nodes.size(), 0);
      for (const auto& pr : p.pairs) {
        ++hits[pr.representative];
        ++hits[pr.partner];
        const Node& a = t.nodes[pr.representative];
        const Node& b = t.nodes[pr.partner];
        CHECK(in_representative_domain(n1, n2, a.k, a.l));
        CHECK(apply_pairing(pr.kind, n1, n2, a.k, a.l) == std::pair{b.k, b.l});
        CHECK(pr.representative != pr.partner);
      }
      for (int h : hits) CHECK(h == 1);
    }
  }

  TEST_CASE("coupling needs odd frequencies") {
    CHECK_THROWS_AS(couple_nodes(enumerate_nodes(shadow(2, 5))), Error);
  }

  TEST_CASE("admissible frequencies") {
    const auto v = admissible_frequencies(3, 3);
    REQUIRE(v.size() == 3);
    CHECK(v[0].n2 == 7);
    CHECK(v[0].n3 == 44);
    for (const auto& t : v) {
      CHECK(t.n2 % 3 == 1);
      CHECK(t.n3 % 2 == 0);
      CHECK(t.n3 % (3 * t.n2) == 2);
    }
    CHECK_THROWS_AS(admissible_frequencies(9, 1), Error);
    CHECK(crt({{2, 3}, {3, 5}}) == 8);
  }
}
