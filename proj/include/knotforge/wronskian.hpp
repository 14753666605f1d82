#pragma once

// Skewness certificate for the nodal curve of L_eps(n1, n2, n3, phi, psi).
//
// With u_n = a^n (...) the derivative rows of the Wronskian are polynomials
// in r = n3/n2. The lowest-order part of row (k, l) reads
//
//   odd n:  c_n alpha^n,         even n:  r c_n beta alpha^(n-1),
//
// alpha = a sin(shift), beta = a cos(shift), and c_n comes from powers of
// u / sin u alone. Coupled nodes share alpha^2 and have beta of opposite
// sign, which turns the lowest-order determinant into a squared Vandermonde
// product over the representatives.

#include <optional>
#include <string>
#include <vector>

#include "knotforge/deformation.hpp"
#include "knotforge/lissajous.hpp"
#include "knotforge/linalg.hpp"
#include "knotforge/precision.hpp"
#include "knotforge/series.hpp"

namespace knotforge {

constexpr unsigned kDefaultWronskianBits = 128;

struct AlphaBetaEntry {
  Node node;
  HighReal alpha;
  HighReal beta;
};

struct AlphaBetaTable {
  int n1 = 0, n2 = 0, n3 = 0;
  double phi = 0.0, psi = 0.0;
  NodeTable table;
  std::vector<AlphaBetaEntry> entries;  // indexed like table.nodes
};

// Throws CongruenceViolation naming the failed condition.
void check_congruences(int n1, int n2, int n3);

// alpha, beta at the given phases (default phi = 1/(8 n1 n2), 2 pi n3 psi = pi/4).
// phi = 0 raises DegenerateTable: type II nodes with k = n1 have a vanishing
// denominator there. Uses the current HighReal precision.
AlphaBetaTable alpha_beta_table(int n1, int n2, int n3, std::optional<double> phi = std::nullopt,
                                std::optional<double> psi = std::nullopt);

// Same table for arbitrary frequencies, without the congruence check.
AlphaBetaTable alpha_beta_table_unchecked(const FrequencySet& freq);

// c_1..c_m (index 0 unused): odd n: (n-1)! [u^(n-1)] q^n, even n: n! [u^(n-2)] q^n,
// q = u / sin u.
template <class T>
std::vector<T> c_coefficients(std::size_t m) {
  std::vector<T> c(m + 1, T(0));
  if (m == 0) return c;
  const Taylor<T> q = x_over_sin_x<T>(m);
  Taylor<T> qn = Taylor<T>::constant(m, T(1));
  T fact = T(1);  // (n-1)!
  for (std::size_t n = 1; n <= m; ++n) {
    qn = qn * q;
    if (n > 1) fact *= T(static_cast<long>(n - 1));
    if (n % 2 == 1) c[n] = fact * qn[n - 1];
    else c[n] = fact * T(static_cast<long>(n)) * qn[n - 2];
  }
  return c;
}

struct D0Result {
  HighReal D0;            // (prod c)(prod alpha) D1
  HighReal D1;            // 2^p (prod_reps beta) zeta(alpha^2_reps)^2
  HighReal D1_direct;     // determinant of the factored structured matrix
  HighReal D0_direct;     // determinant of the lowest-order coefficient matrix
  HighReal D1_literal;    // 2^m (prod_J beta) zeta^2, as stated without the pairing correction
  double min_alpha2_gap = 0.0;  // min relative gap between alpha^2 over representatives
  bool alphas_distinct = false;
};

// Throws DegenerateTable if some alpha or beta vanishes.
D0Result d0_product(const AlphaBetaTable& table, const NodePairing& pairing, const std::vector<HighReal>& c);

// Lowest-order coefficient matrix rows, as used for D0_direct.
Matrix<HighReal> lowest_order_matrix(const AlphaBetaTable& table, const std::vector<HighReal>& c);

struct WronskianValue {
  std::size_t m = 0;
  HighReal D;             // determinant at the working precision
  HighReal D_check;       // determinant at working precision + 64 bits
  HighReal scaled;        // determinant of the row/column normalized matrix
  HighReal log_scale;     // log10 of the scaling factors: log10|D| = log10|scaled| + log_scale
  HighReal noise_floor;   // absolute uncertainty of `scaled`
  unsigned bits = 0;
  bool exact_zero = false;
};

// Determinant of [u_j^(n)(0)], n = 1..m, evaluated at `bits` and `bits + 64`.
// PrecisionLoss when |scaled| is not above the noise floor; two exact zeros
// give D = 0.

// Full Wronskian of the nodal curve of freq (m = node count).
WronskianValue full_wronskian(const FrequencySet& freq, unsigned bits = kDefaultWronskianBits);

// Same, requiring the curve's series order to reach m.
WronskianValue full_wronskian(const NodalCurve& curve, unsigned bits = kDefaultWronskianBits);

// Wronskian of explicitly given specs (double parameters promoted to HighReal).
WronskianValue wronskian_from_specs(const std::vector<InverseSpec>& specs, unsigned bits = kDefaultWronskianBits);

struct WronskianVerdicts {
  bool c_positive = false;
  bool alphas_nonzero = false;
  bool betas_nonzero = false;
  bool alphas_distinct = false;
  bool D0_nonzero = false;
  bool D_nonzero = false;
};

struct WronskianReport {
  int n1 = 0, n2 = 0, n3 = 0;
  double phi = 0.0, psi = 0.0;
  std::size_t m = 0;
  unsigned bits = 0;
  WronskianValue full;
  D0Result d0;
  std::vector<HighReal> c;
  double d0_relative_disagreement = 0.0;  // |D0 - D0_direct| / |D0_direct|
  double d1_relative_disagreement = 0.0;
  WronskianVerdicts verdicts;
  std::string full_error;  // error code if the full Wronskian was unreliable

  bool certified() const {
    return verdicts.c_positive && verdicts.alphas_nonzero && verdicts.betas_nonzero && verdicts.alphas_distinct &&
           verdicts.D0_nonzero && verdicts.D_nonzero;
  }
};

WronskianReport wronskian_report(int n1, int n2, int n3, unsigned bits = kDefaultWronskianBits,
                                 std::optional<double> phi = std::nullopt);

}  // namespace knotforge
