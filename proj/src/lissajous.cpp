#include "knotforge/lissajous.hpp"

#include <cmath>
#include <numbers>

#include "knotforge/arith.hpp"
#include "knotforge/errors.hpp"

namespace knotforge {

void validate_shadow(const FrequencySet& freq) {
  if (freq.n1 < 2 || freq.n2 < 2)
    fail("InvalidFrequency", "n1 and n2 must be at least 2");
  if (!coprime(freq.n1, freq.n2))
    fail("NonCoprime", "gcd(n1, n2) = " + std::to_string(std::gcd(freq.n1, freq.n2)) + " != 1");
  if (freq.n3) {
    if (*freq.n3 < 1) fail("InvalidFrequency", "n3 must be positive");
    if (!coprime(*freq.n3, freq.n1) || !coprime(*freq.n3, freq.n2))
      fail("NonCoprime", "n3 must be coprime to n1 and n2");
  }
  const double bound = 1.0 / (4.0 * freq.n1 * freq.n2);
  if (!(freq.phi > 0.0 && freq.phi < bound))
    fail("PhaseOutOfRange", "phi must satisfy 0 < phi < 1/(4 n1 n2) = " + std::to_string(bound));
  if (freq.eps < 0.0) fail("InvalidFrequency", "eps must be non-negative");
}

NodeType classify(int n1, int n2, int k, int l) {
  return n1 * l > n2 * k ? NodeType::I : NodeType::II;
}

std::optional<std::size_t> NodeTable::find(int k, int l) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].k == k && nodes[i].l == l) return i;
  return std::nullopt;
}

NodeTable enumerate_nodes(const FrequencySet& freq) {
  validate_shadow(freq);
  const int n1 = freq.n1, n2 = freq.n2;
  FrequencySet plain = freq;
  plain.n3.reset();

  NodeTable table;
  table.freq = freq;
  table.nodes.reserve(lissajous_node_count(n1, n2));
  for (int k = 1; k < 2 * n1; ++k) {
    for (int l = 1; n2 * k + n1 * l < 2 * n1 * n2; ++l) {
      Node node;
      node.k = k;
      node.l = l;
      node.type = classify(n1, n2, k, l);
      // Exact rational part first, phase last.
      if (node.type == NodeType::I) {
        const double half = static_cast<double>(n1 * l - n2 * k) / (2.0 * n1 * n2);
        node.t = frac01(half - freq.phi);
        node.s = frac01(half - freq.phi + static_cast<double>(k) / n1);
      } else {
        const double half = static_cast<double>(n2 * k - n1 * l) / (2.0 * n1 * n2);
        node.t = frac01(half);
        node.s = frac01(-half + static_cast<double>(k) / n1);
      }
      node.point = evaluate_shadow(plain, node.t);
      table.nodes.push_back(node);
    }
  }
  return table;
}

const char* to_string(PairingKind kind) {
  switch (kind) {
    case PairingKind::sigma_h_I: return "sigma_h_I";
    case PairingKind::sigma_h_II: return "sigma_h_II";
    case PairingKind::tau_I: return "tau_I";
    case PairingKind::tau_II: return "tau_II";
  }
  return "?";
}

std::pair<int, int> apply_pairing(PairingKind kind, int n1, int n2, int k, int l) {
  switch (kind) {
    case PairingKind::sigma_h_I: return {n1 - k, l};
    case PairingKind::sigma_h_II: return {k, n2 - l};
    case PairingKind::tau_I: return {k, l + n2};
    case PairingKind::tau_II: return {k + n1, l};
  }
  return {k, l};
}

namespace {

// Pi^I: 2k < n1 and n2 k < n1 l < n1 n2 + n2 k.
bool in_pi_one(int n1, int n2, int k, int l) {
  return 2 * k < n1 && n2 * k < n1 * l && n1 * l < n1 * n2 + n2 * k;
}

// Pi^II: 2l < n2 and n1 l < n2 k < n1 n2 + n1 l.
bool in_pi_two(int n1, int n2, int k, int l) {
  return 2 * l < n2 && n1 * l < n2 * k && n2 * k < n1 * n2 + n1 * l;
}

}  // namespace

bool in_representative_domain(int n1, int n2, int k, int l) {
  return in_pi_one(n1, n2, k, l) || in_pi_two(n1, n2, k, l);
}

NodePairing couple_nodes(const NodeTable& table) {
  const int n1 = table.freq.n1, n2 = table.freq.n2;
  if (n1 % 2 == 0 || n2 % 2 == 0)
    fail("EvenFrequency", "node coupling needs odd n1 and n2; an axis point would be fixed");

  NodePairing pairing;
  pairing.pairs.reserve(table.nodes.size() / 2);
  for (std::size_t i = 0; i < table.nodes.size(); ++i) {
    const Node& node = table.nodes[i];
    const int k = node.k, l = node.l;
    PairingKind kind;
    if (in_pi_one(n1, n2, k, l)) {
      // The diamond above l = n2 - n2 k/n1 is reflected, the strip below it translated.
      kind = n1 * l > n1 * n2 - n2 * k ? PairingKind::sigma_h_I : PairingKind::tau_I;
    } else if (in_pi_two(n1, n2, k, l)) {
      kind = n2 * k > n1 * n2 - n1 * l ? PairingKind::sigma_h_II : PairingKind::tau_II;
    } else {
      continue;
    }
    const auto [pk, pl] = apply_pairing(kind, n1, n2, k, l);
    const auto partner = table.find(pk, pl);
    if (!partner)
      fail("PairingFailure", "partner of (" + std::to_string(k) + "," + std::to_string(l) +
                                 ") is outside the node table");
    pairing.pairs.push_back({i, *partner, kind});
  }
  if (pairing.pairs.size() * 2 != table.nodes.size())
    fail("PairingFailure", "coupling does not cover the node set");
  return pairing;
}

std::int64_t crt(const std::vector<std::pair<std::int64_t, std::int64_t>>& congruences) {
  std::int64_t x = 0, m = 1;
  for (const auto& [r, mi] : congruences) {
    // Solve x + m*j = r (mod mi) by stepping j; moduli here are small.
    std::int64_t j = 0;
    while (mod(x + m * j - r, mi) != 0) {
      if (++j > mi) fail("CrtFailure", "moduli are not pairwise coprime");
    }
    x += m * j;
    m *= mi;
    x = mod(x, m);
  }
  return x;
}

std::vector<AdmissibleTriple> admissible_frequencies(int n1, int count) {
  if (n1 < 3 || !is_prime(n1)) fail("NotOddPrime", std::to_string(n1) + " is not an odd prime");
  std::vector<AdmissibleTriple> out;
  for (std::int64_t p = 1; static_cast<int>(out.size()) < count; ++p) {
    const std::int64_t n2 = 2 * n1 * p + 1;
    if (!is_prime(n2)) continue;
    const std::int64_t period = 2 * n1 * n2;
    std::int64_t n3 = crt({{0, 2}, {2, n1 * n2}});
    while (n3 <= 2) n3 += period;
    out.push_back({static_cast<int>(n2), static_cast<int>(n3)});
  }
  return out;
}

std::array<double, 2> evaluate_shadow(const FrequencySet& freq, double t) {
  const long double tl = t;
  const double x = static_cast<double>(cos_turns(freq.n1 * tl));
  long double y = cos_turns(freq.n2 * (tl + freq.phi));
  if (freq.n3 && freq.eps != 0.0)
    y += freq.eps * cos_turns(*freq.n3 * (tl + freq.phi + freq.psi));
  return {x, static_cast<double>(y)};
}

std::array<double, 2> shadow_velocity(const FrequencySet& freq, double t) {
  constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  const long double tl = t;
  const long double dx = -two_pi * freq.n1 * sin_turns(freq.n1 * tl);
  long double dy = -two_pi * freq.n2 * sin_turns(freq.n2 * (tl + freq.phi));
  if (freq.n3 && freq.eps != 0.0)
    dy -= freq.eps * two_pi * *freq.n3 * sin_turns(*freq.n3 * (tl + freq.phi + freq.psi));
  return {static_cast<double>(dx), static_cast<double>(dy)};
}

}  // namespace knotforge
