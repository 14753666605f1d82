#pragma once

// Exhaustive search for small integer relations
//
//   lambda_1 v_1 + ... + lambda_n v_n + lambda_{n+1} = 0   (to within tol),
//
// |lambda_i| <= max_coeff, not all of lambda_1..lambda_n zero. The constant
// coordinate is not enumerated: it is the rounded negated sum. Reported
// relations are normalized (first nonzero coefficient positive) and the
// canonical one is the minimum by (height, lexicographic order).

#include <cstdint>
#include <optional>
#include <vector>

namespace knotforge {

constexpr double kDefaultRelationBudget = 8589934592.0;  // 2^33 candidate vectors

struct Relation {
  std::vector<long long> coeffs;  // lambda_1..lambda_n, lambda_{n+1}
  double residual = 0.0;
  long long height = 0;
};

// True if a precedes b by (height, lexicographic).
bool relation_less(const Relation& a, const Relation& b);

// Throws SearchSpaceTooLarge if (2 max_coeff + 1)^(n+1) exceeds budget,
// InvalidArgument for max_coeff < 1 or non-finite values.
std::optional<Relation> rational_relation_search(const std::vector<double>& values, int max_coeff, double tol,
                                                 double budget = kDefaultRelationBudget);
std::optional<Relation> rational_relation_search_serial(const std::vector<double>& values, int max_coeff,
                                                        double tol, double budget = kDefaultRelationBudget);

// |sum lambda_i v_i + lambda_{n+1}|.
double relation_residual(const std::vector<double>& values, const std::vector<long long>& coeffs);

}  // namespace knotforge
