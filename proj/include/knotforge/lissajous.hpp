#pragma once

// Nodes of planar Lissajous curves
//
//   L(n1, n2, phi):  t -> (cos 2 pi n1 t,  cos 2 pi n2 (t + phi))
//
// and of their deformations L_eps(n1, n2, n3, phi, psi), which add
// eps * cos 2 pi n3 (t + phi + psi) to the second coordinate. All phases
// are measured in cycles (turns), not radians.
//
// For coprime n1, n2 and a small positive phase the 2 n1 n2 - n1 - n2
// double points are indexed by the integer points (k, l) of the open
// triangle k > 0, l > 0, n2 k + n1 l < 2 n1 n2, with closed-form parameters.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace knotforge {

struct FrequencySet {
  int n1 = 0;
  int n2 = 0;
  std::optional<int> n3;  // deformation frequency
  std::optional<long long> n4;  // height frequency
  double phi = 0.0;
  double psi = 0.0;
  double tau = 0.0;
  double eps = 0.0;

  // phi = 1/(8 n1 n2): well inside the admissible window (0, 1/(4 n1 n2)).
  static double default_phi(int n1, int n2) { return 1.0 / (8.0 * n1 * n2); }
  // psi = 1/(8 n3), i.e. 2 pi n3 psi = pi/4.
  static double auto_psi(int n3) { return 1.0 / (8.0 * n3); }
};

// Throws NonCoprime / InvalidFrequency / PhaseOutOfRange.
void validate_shadow(const FrequencySet& freq);

// Node count of the degenerate (phi = 0) Chebyshev curve C(n1, n2).
constexpr int chebyshev_node_count(int n1, int n2) { return (n1 - 1) * (n2 - 1) / 2; }
constexpr int lissajous_node_count(int n1, int n2) { return 2 * n1 * n2 - n1 - n2; }

enum class NodeType { I, II };

inline const char* to_string(NodeType t) { return t == NodeType::I ? "I" : "II"; }

struct Node {
  int k = 0;
  int l = 0;
  NodeType type = NodeType::I;
  double t = 0.0;  // formula parameter
  double s = 0.0;  // companion parameter
  std::array<double, 2> point{};
};

struct NodeTable {
  FrequencySet freq;
  std::vector<Node> nodes;  // lexicographic in (k, l)

  std::optional<std::size_t> find(int k, int l) const;
};

NodeTable enumerate_nodes(const FrequencySet& freq);

// Type of the lattice point (k, l); equality n1 l == n2 k cannot occur inside
// the triangle for coprime frequencies.
NodeType classify(int n1, int n2, int k, int l);

enum class PairingKind { sigma_h_I, sigma_h_II, tau_I, tau_II };

const char* to_string(PairingKind kind);

struct NodePair {
  std::size_t representative;  // index into the table, lies in Pi^I or Pi^II
  std::size_t partner;
  PairingKind kind;
};

struct NodePairing {
  std::vector<NodePair> pairs;
};

// Membership of (k, l) in the representative parallelograms Pi^I / Pi^II.
bool in_representative_domain(int n1, int n2, int k, int l);

// Image of (k, l) under the symmetry or translation named by kind.
std::pair<int, int> apply_pairing(PairingKind kind, int n1, int n2, int k, int l);

// Requires n1, n2 odd (EvenFrequency otherwise).
NodePairing couple_nodes(const NodeTable& table);

struct AdmissibleTriple {
  int n2;
  int n3;
};

// Pairs (n2, n3): n2 = 2 n1 p + 1 prime, n3 the smallest even solution > 2 of
// n3 = 2 mod n1 n2. Throws NotOddPrime.
std::vector<AdmissibleTriple> admissible_frequencies(int n1, int count);

// Smallest x >= 0 with x = r_i mod m_i for pairwise coprime moduli.
std::int64_t crt(const std::vector<std::pair<std::int64_t, std::int64_t>>& congruences);

// (x, y) of the (possibly deformed) shadow at parameter t. The eps term is
// included only when freq.n3 is set.
std::array<double, 2> evaluate_shadow(const FrequencySet& freq, double t);

// Velocity (dx/dt, dy/dt) of the shadow.
std::array<double, 2> shadow_velocity(const FrequencySet& freq, double t);

}  // namespace knotforge
