#pragma once

// Height functions z(t) = cos 2 pi n4 (t + tau) realizing prescribed crossing
// signs: at node i we need sign(z(t_i) - z(s_i)) = alpha(i).
//
// With H = (t + s)/2 and D = (t - s)/2,
//
//   z(t) - z(s) = -2 sin 2 pi n4 (H + tau) sin 2 pi n4 D,
//
// so for a fixed n4 the admissible tau form a half circle per node. The
// default strategy tests all 64 grid phases tau_j = j / (64 n4) at once with
// 64-bit fixed-point phases and a bitmask per node, then verifies the first
// surviving phase directly.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "knotforge/lissajous.hpp"

namespace knotforge {

struct SignAssignment {
  std::vector<int> signs;  // +1 / -1, indexed like the node table

  // "+-+..." or with whitespace; throws InvalidSigns.
  static SignAssignment parse(const std::string& text);
  std::string str() const;
  std::size_t size() const { return signs.size(); }
};

enum class HeightStrategy { Bitmask, Screen };

struct HeightOptions {
  long long n_max = 1000000;
  double margin_min = 1e-6;
  int tau_grid = 64;        // phases j / (tau_grid n4); the bitmask strategy needs 64
  double eps_k = 0.2;       // closeness target of the screening strategy
  double eps_k_min = 0.05;
  HeightStrategy strategy = HeightStrategy::Bitmask;
  long long chunk = 1 << 14;  // candidates per parallel work item
};

struct HeightSolution {
  long long n4 = 1;
  double tau = 0.0;
  double margin = 0.0;
  long long iterations = 0;
};

struct SignCheck {
  bool ok = false;
  double margin = 0.0;               // min |z(t_i) - z(s_i)|
  std::vector<int> realized;         // sign per node (0 for a tie)
  std::vector<double> differences;   // z(t_i) - z(s_i)
  std::vector<std::size_t> mismatches;
};

using ParameterPairs = std::vector<std::pair<double, double>>;

ParameterPairs node_parameters(const NodeTable& table);

SignCheck verify_signs(long long n4, double tau, const ParameterPairs& nodes, const SignAssignment& assignment);
SignCheck verify_signs(const FrequencySet& freq, const ParameterPairs& nodes, const SignAssignment& assignment);

// Smallest n4 <= n_max, gcd(n4, n1) = 1, with a grid tau (tau = 0 first)
// realizing the assignment with margin >= margin_min. Throws BudgetExhausted,
// DegenerateNode, InvalidSigns. The parallel and serial versions return the
// same solution.
HeightSolution kronecker_search(const ParameterPairs& nodes, const SignAssignment& assignment, int n1,
                                const HeightOptions& opts = {});
HeightSolution kronecker_search_serial(const ParameterPairs& nodes, const SignAssignment& assignment, int n1,
                                       const HeightOptions& opts = {});

}  // namespace knotforge
