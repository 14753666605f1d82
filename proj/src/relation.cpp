#include "knotforge/relation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "knotforge/errors.hpp"

namespace knotforge {

bool relation_less(const Relation& a, const Relation& b) {
  if (a.height != b.height) return a.height < b.height;
  return a.coeffs < b.coeffs;
}

double relation_residual(const std::vector<double>& values, const std::vector<long long>& coeffs) {
  long double s = 0;
  for (std::size_t i = 0; i < values.size(); ++i) s += static_cast<long double>(coeffs[i]) * values[i];
  s += coeffs.back();
  return static_cast<double>(std::fabs(s));
}

namespace {

void validate(const std::vector<double>& values, int max_coeff, double budget) {
  if (max_coeff < 1) fail("InvalidArgument", "max_coeff must be at least 1");
  for (double v : values)
    if (!std::isfinite(v)) fail("InvalidArgument", "values must be finite");
  const double space = std::pow(2.0 * max_coeff + 1.0, static_cast<double>(values.size() + 1));
  if (space > budget)
    fail("SearchSpaceTooLarge", "(2*" + std::to_string(max_coeff) + "+1)^" + std::to_string(values.size() + 1) +
                                    " candidates exceed the budget");
}

void offer(std::optional<Relation>& best, std::vector<long long> lam, long long constant, double residual) {
  lam.push_back(constant);
  // Normalize so the first nonzero coefficient is positive.
  for (long long c : lam) {
    if (c == 0) continue;
    if (c < 0)
      for (auto& x : lam) x = -x;
    break;
  }
  Relation r;
  r.height = 0;
  for (long long c : lam) r.height = std::max(r.height, c < 0 ? -c : c);
  r.coeffs = std::move(lam);
  r.residual = residual;
  if (!best || relation_less(r, *best)) best = std::move(r);
}

// Scans every prefix (lambda_1..lambda_{n-1}) with index in [begin, end),
// the last coordinate innermost. The inner loop runs in double and only
// near-hits are re-evaluated in long double, so the accepted set is the
// long double one.
void scan_range(const std::vector<double>& v, int M, double tol, long long begin, long long end,
                std::optional<Relation>& best) {
  const std::size_t n = v.size();
  const long long width = 2LL * M + 1;
  std::vector<long long> lam(n, 0);
  const long double vn = v[n - 1];
  const double vnd = v[n - 1];
  double vmax = 1.0;
  for (double x : v) vmax = std::max(vmax, std::fabs(x));
  const double guard = tol + 8.0 * static_cast<double>(n + 1) * M * vmax * 0x1p-52;
  constexpr double kRound = 0x1.8p52;  // (x + kRound) - kRound rounds to nearest for |x| < 2^51
  for (long long idx = begin; idx < end; ++idx) {
    long long rest = idx;
    long double prefix = 0;
    bool prefix_zero = true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      lam[i] = rest % width - M;
      rest /= width;
      prefix += static_cast<long double>(lam[i]) * v[i];
      prefix_zero = prefix_zero && lam[i] == 0;
    }
    const double pd = static_cast<double>(prefix);
    for (long long c = -M; c <= M; ++c) {
      const double sd = pd + static_cast<double>(c) * vnd;
      const double kd = (sd + kRound) - kRound;
      if (!(std::fabs(sd - kd) < guard)) continue;
      if (prefix_zero && c == 0) continue;
      const long double s = prefix + static_cast<long double>(c) * vn;
      const long double k = std::nearbyint(s);
      if (std::fabs(k) > M) continue;
      const long double res = std::fabs(s - k);
      if (res < tol) {
        lam[n - 1] = c;
        offer(best, lam, -static_cast<long long>(k), static_cast<double>(res));
      }
    }
  }
}

long long prefix_count(std::size_t n, int M) {
  long long count = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) count *= 2LL * M + 1;
  return count;
}

}  // namespace

std::optional<Relation> rational_relation_search_serial(const std::vector<double>& values, int max_coeff,
                                                        double tol, double budget) {
  validate(values, max_coeff, budget);
  if (values.empty()) return std::nullopt;
  std::optional<Relation> best;
  scan_range(values, max_coeff, tol, 0, prefix_count(values.size(), max_coeff), best);
  return best;
}

std::optional<Relation> rational_relation_search(const std::vector<double>& values, int max_coeff, double tol,
                                                 double budget) {
  validate(values, max_coeff, budget);
  if (values.empty()) return std::nullopt;
  const long long total = prefix_count(values.size(), max_coeff);
  const long long chunk = 64;
  const long long chunks = (total + chunk - 1) / chunk;
  std::optional<Relation> best;
#pragma omp parallel
  {
    std::optional<Relation> local;
#pragma omp for schedule(dynamic, 4)
    for (long long c = 0; c < chunks; ++c)
      scan_range(values, max_coeff, tol, c * chunk, std::min(total, (c + 1) * chunk), local);
#pragma omp critical
    {
      if (local && (!best || relation_less(*local, *best))) best = local;
    }
  }
  return best;
}

}  // namespace knotforge
