#include "knotforge/wronskian.hpp"

#include <algorithm>
#include <cmath>

#include "knotforge/arith.hpp"
#include "knotforge/errors.hpp"

namespace knotforge {

namespace mp = boost::multiprecision;

void check_congruences(int n1, int n2, int n3) {
  auto violation = [](const std::string& what) { fail("CongruenceViolation", what); };
  if (n1 < 3 || !is_prime(n1)) violation("n1 = " + std::to_string(n1) + " is not an odd prime");
  if (n2 < 3 || !is_prime(n2)) violation("n2 = " + std::to_string(n2) + " is not an odd prime");
  if (n3 % 2 != 0) violation("n3 = " + std::to_string(n3) + " is not even");
  if (mod(n2, n1) != 1) violation("n2 = 1 (mod n1) fails");
  if (mod(n3, n1) != 2) violation("n3 = 2 (mod n1) fails");
  if (mod(n3, n2) != 2) violation("n3 = 2 (mod n2) fails");
}

AlphaBetaTable alpha_beta_table_unchecked(const FrequencySet& freq) {
  AlphaBetaTable out;
  out.n1 = freq.n1;
  out.n2 = freq.n2;
  out.n3 = freq.n3.value_or(0);
  out.phi = freq.phi;
  out.psi = freq.psi;
  out.table = enumerate_nodes(freq);
  out.entries.reserve(out.table.nodes.size());
  for (const Node& node : out.table.nodes) {
    const auto spec = make_inverse_spec<HighReal>(freq, node);
    out.entries.push_back({node, spec.a * mp::sin(spec.shift), spec.a * mp::cos(spec.shift)});
  }
  return out;
}

AlphaBetaTable alpha_beta_table(int n1, int n2, int n3, std::optional<double> phi, std::optional<double> psi) {
  check_congruences(n1, n2, n3);
  if (phi && *phi == 0.0)
    fail("DegenerateTable",
         "phi = 0: type II nodes with k = n1 have sin(pi n2 k / n1) = 0 in the amplitude denominator");
  FrequencySet freq;
  freq.n1 = n1;
  freq.n2 = n2;
  freq.n3 = n3;
  freq.phi = phi.value_or(FrequencySet::default_phi(n1, n2));
  freq.psi = psi.value_or(FrequencySet::auto_psi(n3));
  return alpha_beta_table_unchecked(freq);
}

Matrix<HighReal> lowest_order_matrix(const AlphaBetaTable& table, const std::vector<HighReal>& c) {
  const std::size_t m = table.entries.size();
  Matrix<HighReal> a(m, std::vector<HighReal>(m));
  for (std::size_t j = 0; j < m; ++j) {
    const HighReal& al = table.entries[j].alpha;
    const HighReal& be = table.entries[j].beta;
    HighReal pw = al;  // alpha^n for odd n
    for (std::size_t n = 1; n <= m; ++n) {
      if (n % 2 == 1) {
        if (n > 1) pw *= al * al;
        a[j][n - 1] = c[n] * pw;
      } else {
        a[j][n - 1] = c[n] * be * pw;
      }
    }
  }
  return a;
}

namespace {

HighReal vandermonde(const std::vector<HighReal>& x) {
  HighReal z = HighReal(1);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) z *= x[j] - x[i];
  return z;
}

double relative_gap(const HighReal& a, const HighReal& b) {
  const HighReal scale = std::max<HighReal>(mp::abs(a), mp::abs(b));
  if (scale == 0) return 0.0;
  return to_double(mp::abs(a - b) / scale);
}

}  // namespace

D0Result d0_product(const AlphaBetaTable& table, const NodePairing& pairing, const std::vector<HighReal>& c) {
  const std::size_t m = table.entries.size();
  if (m % 2 != 0) fail("DegenerateTable", "odd node count");
  if (pairing.pairs.size() * 2 != m) fail("DegenerateTable", "pairing does not match the table");
  if (c.size() < m + 1) fail("DegenerateTable", "too few c_n coefficients");
  for (const auto& e : table.entries)
    if (e.alpha == 0 || e.beta == 0)
      fail("DegenerateTable", "alpha or beta vanishes at node (" + std::to_string(e.node.k) + "," +
                                  std::to_string(e.node.l) + "); D0 = 0");

  D0Result out;
  const std::size_t p = pairing.pairs.size();
  std::vector<HighReal> alpha2;
  HighReal prod_beta_reps = HighReal(1);
  for (const auto& pr : pairing.pairs) {
    const auto& e = table.entries[pr.representative];
    alpha2.push_back(e.alpha * e.alpha);
    prod_beta_reps *= e.beta;
  }
  const HighReal zeta = vandermonde(alpha2);
  out.D1 = mp::ldexp(prod_beta_reps, static_cast<int>(p)) * zeta * zeta;

  HighReal prod_beta_all = HighReal(1), prod_alpha = HighReal(1), prod_c = HighReal(1);
  for (const auto& e : table.entries) {
    prod_beta_all *= e.beta;
    prod_alpha *= e.alpha;
  }
  for (std::size_t n = 1; n <= m; ++n) prod_c *= c[n];
  out.D1_literal = mp::ldexp(prod_beta_all, static_cast<int>(m)) * zeta * zeta;
  out.D0 = prod_c * prod_alpha * out.D1;

  // The direct determinants are Vandermonde-like; evaluate them with extra
  // guard bits so the comparison measures the formula, not the elimination.
  {
    PrecisionScope guard(current_precision_bits() + 128);
    Matrix<HighReal> f(m, std::vector<HighReal>(m));
    for (std::size_t j = 0; j < m; ++j) {
      const HighReal al2 = table.entries[j].alpha * table.entries[j].alpha;
      const HighReal be = table.entries[j].beta;
      HighReal pw = HighReal(1);
      for (std::size_t n = 1; n <= m; n += 2) {
        f[j][n - 1] = pw;
        if (n < m) f[j][n] = be * pw;
        pw *= al2;
      }
    }
    out.D1_direct = determinant(f);
    out.D0_direct = determinant(lowest_order_matrix(table, c));
  }

  out.min_alpha2_gap = 1.0;
  for (std::size_t i = 0; i < alpha2.size(); ++i)
    for (std::size_t j = i + 1; j < alpha2.size(); ++j)
      out.min_alpha2_gap = std::min(out.min_alpha2_gap, relative_gap(alpha2[i], alpha2[j]));
  out.alphas_distinct = out.min_alpha2_gap > 1e-9;
  return out;
}

namespace {

Matrix<HighReal> derivative_matrix(const std::vector<BasicInverseSpec<HighReal>>& specs) {
  const std::size_t m = specs.size();
  Matrix<HighReal> a(m, std::vector<HighReal>(m));
  for (std::size_t j = 0; j < m; ++j) {
    const auto s = lagrange_coefficients(specs[j], std::max<std::size_t>(m, 1));
    for (std::size_t n = 1; n <= m; ++n) a[j][n - 1] = s.c[n];
  }
  return a;
}

struct ScaledDet {
  HighReal scaled;
  HighReal log_scale;
  HighReal D;
};

ScaledDet scaled_determinant(Matrix<HighReal> a) {
  const std::size_t m = a.size();
  HighReal log_scale = HighReal(0);
  for (std::size_t j = 0; j < m; ++j) {
    HighReal mx = HighReal(0);
    for (const auto& v : a[j]) mx = std::max<HighReal>(mx, mp::abs(v));
    if (mx == 0) continue;
    for (auto& v : a[j]) v /= mx;
    log_scale += mp::log10(mx);
  }
  for (std::size_t n = 0; n < m; ++n) {
    HighReal mx = HighReal(0);
    for (std::size_t j = 0; j < m; ++j) mx = std::max<HighReal>(mx, mp::abs(a[j][n]));
    if (mx == 0) continue;
    for (std::size_t j = 0; j < m; ++j) a[j][n] /= mx;
    log_scale += mp::log10(mx);
  }
  ScaledDet out;
  out.scaled = determinant(a);
  out.log_scale = log_scale;
  out.D = out.scaled * mp::pow(HighReal(10), log_scale);
  return out;
}

template <class Build>
WronskianValue wronskian_of(Build&& build, unsigned bits) {
  WronskianValue out;
  out.bits = bits;
  ScaledDet lo, hi;
  {
    PrecisionScope scope(bits + 64);
    const auto specs = build();
    out.m = specs.size();
    hi = scaled_determinant(derivative_matrix(specs));
  }
  {
    PrecisionScope scope(bits);
    lo = scaled_determinant(derivative_matrix(build()));
    out.D = lo.D;
    out.scaled = lo.scaled;
    out.log_scale = lo.log_scale;
    out.D_check = HighReal(hi.D);
    if (lo.scaled == 0 && hi.scaled == 0) {
      out.exact_zero = true;
      out.noise_floor = HighReal(0);
      return out;
    }
    // The derivative matrix is strongly graded, so a priori elimination bounds
    // overstate the error by many orders of magnitude; measure it instead.
    const HighReal m = HighReal(static_cast<long>(std::max<std::size_t>(out.m, 1)));
    const HighReal rounding = m * mp::abs(HighReal(hi.scaled)) * mp::ldexp(HighReal(1), -static_cast<int>(bits));
    out.noise_floor = 4 * mp::abs(lo.scaled - HighReal(hi.scaled)) + rounding;
    const bool same_sign = (lo.scaled > 0) == (hi.scaled > 0);
    if (!same_sign || !(mp::abs(lo.scaled) > out.noise_floor))
      fail("PrecisionLoss", "scaled Wronskian " + to_sci_string(lo.scaled, 6) + " is below the noise floor " +
                                to_sci_string(out.noise_floor, 3));
  }
  return out;
}

}  // namespace

WronskianValue full_wronskian(const FrequencySet& freq, unsigned bits) {
  const NodeTable table = enumerate_nodes(freq);
  return wronskian_of(
      [&] {
        std::vector<BasicInverseSpec<HighReal>> specs;
        specs.reserve(table.nodes.size());
        for (const Node& node : table.nodes) specs.push_back(make_inverse_spec<HighReal>(freq, node));
        return specs;
      },
      bits);
}

WronskianValue full_wronskian(const NodalCurve& curve, unsigned bits) {
  const std::size_t m = curve.entries.size();
  for (const auto& e : curve.entries)
    if (e.series.order() < m)
      fail("InvalidOrder", "nodal curve series order " + std::to_string(e.series.order()) + " < m = " +
                               std::to_string(m));
  return full_wronskian(curve.freq, bits);
}

WronskianValue wronskian_from_specs(const std::vector<InverseSpec>& specs, unsigned bits) {
  return wronskian_of(
      [&] {
        std::vector<BasicInverseSpec<HighReal>> out;
        for (const auto& s : specs) {
          BasicInverseSpec<HighReal> h;
          h.a = HighReal(s.a);
          h.r = HighReal(s.r);
          h.shift = HighReal(s.shift);
          h.n2 = s.n2;
          h.n3 = s.n3;
          h.k = s.k;
          h.l = s.l;
          h.type = s.type;
          h.base = s.base;
          out.push_back(h);
        }
        return out;
      },
      bits);
}

WronskianReport wronskian_report(int n1, int n2, int n3, unsigned bits, std::optional<double> phi) {
  WronskianReport rep;
  rep.n1 = n1;
  rep.n2 = n2;
  rep.n3 = n3;
  rep.bits = bits;
  check_congruences(n1, n2, n3);

  PrecisionScope scope(bits);
  const AlphaBetaTable table = alpha_beta_table(n1, n2, n3, phi);
  rep.phi = table.phi;
  rep.psi = table.psi;
  rep.m = table.entries.size();
  rep.c = c_coefficients<HighReal>(rep.m);

  rep.verdicts.c_positive = true;
  for (std::size_t n = 1; n <= rep.m; ++n) rep.verdicts.c_positive = rep.verdicts.c_positive && rep.c[n] > 0;
  rep.verdicts.alphas_nonzero = true;
  rep.verdicts.betas_nonzero = true;
  for (const auto& e : table.entries) {
    rep.verdicts.alphas_nonzero = rep.verdicts.alphas_nonzero && mp::abs(e.alpha) > 1e-12;
    rep.verdicts.betas_nonzero = rep.verdicts.betas_nonzero && mp::abs(e.beta) > 1e-12;
  }

  const NodePairing pairing = couple_nodes(table.table);
  rep.d0 = d0_product(table, pairing, rep.c);
  rep.verdicts.alphas_distinct = rep.d0.alphas_distinct;
  auto rel = [](const HighReal& x, const HighReal& ref) {
    return ref == 0 ? INFINITY : to_double(mp::abs(mp::abs(x) - mp::abs(ref)) / mp::abs(ref));
  };
  rep.d0_relative_disagreement = rel(rep.d0.D0, rep.d0.D0_direct);
  rep.d1_relative_disagreement = rel(rep.d0.D1, rep.d0.D1_direct);
  rep.verdicts.D0_nonzero = mp::abs(rep.d0.D0) > HighReal(1e-300) && rep.d0_relative_disagreement < 1e-9;

  FrequencySet freq;
  freq.n1 = n1;
  freq.n2 = n2;
  freq.n3 = n3;
  freq.phi = rep.phi;
  freq.psi = rep.psi;
  try {
    rep.full = full_wronskian(freq, bits);
    rep.verdicts.D_nonzero = !rep.full.exact_zero;
  } catch (const Error& e) {
    rep.full_error = e.code();
    rep.verdicts.D_nonzero = false;
  }
  return rep;
}

}  // namespace knotforge
