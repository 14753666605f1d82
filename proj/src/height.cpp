#include "knotforge/height.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <omp.h>

#include "knotforge/arith.hpp"
#include "knotforge/errors.hpp"

namespace knotforge {

SignAssignment SignAssignment::parse(const std::string& text) {
  SignAssignment a;
  for (char ch : text) {
    if (ch == '+') a.signs.push_back(1);
    else if (ch == '-') a.signs.push_back(-1);
    else if (ch == ' ' || ch == '\n' || ch == '\r' || ch == '\t' || ch == ',') continue;
    else fail("InvalidSigns", std::string("unexpected character '") + ch + "' in sign string");
  }
  return a;
}

std::string SignAssignment::str() const {
  std::string s;
  s.reserve(signs.size());
  for (int v : signs) s.push_back(v > 0 ? '+' : '-');
  return s;
}

ParameterPairs node_parameters(const NodeTable& table) {
  ParameterPairs out;
  out.reserve(table.nodes.size());
  for (const Node& n : table.nodes) out.emplace_back(n.t, n.s);
  return out;
}

namespace {

// cos 2 pi n (x + tau) with n x reduced before the phase is added.
long double height_at(long long n, double x, double tau) {
  const long double nx = static_cast<long double>(n) * x;
  const long double nt = static_cast<long double>(n) * tau;
  return cos_turns((nx - std::floor(nx)) + (nt - std::floor(nt)));
}

}  // namespace

SignCheck verify_signs(long long n4, double tau, const ParameterPairs& nodes, const SignAssignment& assignment) {
  if (assignment.size() != nodes.size()) fail("InvalidSigns", "assignment length does not match the node count");
  SignCheck out;
  out.margin = nodes.empty() ? 2.0 : std::numeric_limits<double>::infinity();
  out.realized.reserve(nodes.size());
  out.differences.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const long double d = height_at(n4, nodes[i].first, tau) - height_at(n4, nodes[i].second, tau);
    const int s = (d > 0) - (d < 0);
    out.realized.push_back(s);
    out.differences.push_back(static_cast<double>(d));
    out.margin = std::min(out.margin, static_cast<double>(std::fabs(d)));
    if (s != assignment.signs[i]) out.mismatches.push_back(i);
  }
  out.ok = out.mismatches.empty();
  return out;
}

SignCheck verify_signs(const FrequencySet& freq, const ParameterPairs& nodes, const SignAssignment& assignment) {
  if (!freq.n4) fail("MissingFrequency", "verify_signs needs n4");
  return verify_signs(*freq.n4, freq.tau, nodes, assignment);
}

namespace {

constexpr std::uint64_t kUpperHalf = 0x00000000FFFFFFFFull;  // bit i set iff i < 32
constexpr std::uint64_t kLow58 = (1ull << 58) - 1;

std::uint64_t to_fixed(long double x) {
  long double f = x - std::floor(x);
  long double scaled = std::ldexp(f, 64);
  if (!(scaled < 18446744073709551616.0L)) return 0;
  return static_cast<std::uint64_t>(scaled);
}

struct Prepared {
  std::vector<std::uint64_t> h, d;
  std::vector<int> alpha;
  std::vector<double> t, s;
};

Prepared prepare(const ParameterPairs& nodes, const SignAssignment& assignment) {
  if (assignment.size() != nodes.size()) fail("InvalidSigns", "assignment length does not match the node count");
  Prepared p;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const long double t = nodes[i].first, s = nodes[i].second;
    const long double diff = t - s;
    if (std::fabs(diff - std::nearbyint(diff)) < 1e-12L)
      fail("DegenerateNode", "node " + std::to_string(i) + " has t = s mod 1; no height separates it");
    if (assignment.signs[i] != 1 && assignment.signs[i] != -1) fail("InvalidSigns", "signs must be +1 or -1");
    p.h.push_back(to_fixed((t + s) / 2));
    p.d.push_back(to_fixed((t - s) / 2));
    p.alpha.push_back(assignment.signs[i]);
    p.t.push_back(nodes[i].first);
    p.s.push_back(nodes[i].second);
  }
  return p;
}

// Grid phases j (bit j) for which every node has the required sign.
std::uint64_t phase_mask(const Prepared& p, std::uint64_t n, std::size_t& matched) {
  std::uint64_t acc = ~0ull;
  for (std::size_t i = 0; i < p.h.size(); ++i) {
    const std::uint64_t y = n * p.d[i];
    if ((y << 1) == 0) {
      matched = i;
      return 0;  // sin 2 pi n D = 0
    }
    const int sd = (y >> 63) ? -1 : 1;
    const bool want_positive = -p.alpha[i] * sd > 0;
    const std::uint64_t x = n * p.h[i];
    const int q = static_cast<int>(x >> 58);
    std::uint64_t m = std::rotr(want_positive ? kUpperHalf : ~kUpperHalf, q);
    if ((x & kLow58) == 0) {
      // Exact zero of the sine at frac = 0 or 1/2.
      const int j = ((want_positive ? 0 : 32) - q + 64) & 63;
      m &= ~(1ull << j);
    }
    acc &= m;
    if (!acc) {
      matched = i;
      return 0;
    }
  }
  matched = p.h.size();
  return acc;
}

std::optional<HeightSolution> check_phases(const Prepared& p, const ParameterPairs& nodes,
                                           const SignAssignment& assignment, long long n, std::uint64_t mask,
                                           int grid, double margin_min) {
  (void)p;
  while (mask) {
    const int j = std::countr_zero(mask);
    mask &= mask - 1;
    const double tau = static_cast<double>(j) / (static_cast<double>(grid) * static_cast<double>(n));
    const SignCheck chk = verify_signs(n, tau, nodes, assignment);
    if (chk.ok && chk.margin >= margin_min) return HeightSolution{n, tau, chk.margin, 0};
  }
  return std::nullopt;
}

struct ScreenState {
  double eps_k;
  int failures = 0;
};

std::optional<HeightSolution> screen_candidate(const Prepared& p, const ParameterPairs& nodes,
                                               const SignAssignment& assignment, long long n,
                                               const HeightOptions& opts, ScreenState& st, std::size_t& matched) {
  for (std::size_t i = 0; i < p.t.size(); ++i) {
    if (std::fabs(height_at(n, p.t[i], 0.0) - p.alpha[i]) > st.eps_k) {
      matched = i;
      return std::nullopt;
    }
  }
  matched = p.t.size();
  for (int j = 0; j < opts.tau_grid; ++j) {
    const double tau = static_cast<double>(j) / (static_cast<double>(opts.tau_grid) * static_cast<double>(n));
    const SignCheck chk = verify_signs(n, tau, nodes, assignment);
    if (chk.ok && chk.margin >= opts.margin_min) return HeightSolution{n, tau, chk.margin, 0};
  }
  if (++st.failures > 8 && st.eps_k > opts.eps_k_min) {
    st.eps_k = std::max(opts.eps_k_min, st.eps_k / 2);
    st.failures = 0;
  }
  return std::nullopt;
}

struct ChunkResult {
  std::optional<HeightSolution> hit;
  std::size_t best_partial = 0;
};

ChunkResult scan_chunk(const Prepared& p, const ParameterPairs& nodes, const SignAssignment& assignment, int n1,
                       long long begin, long long end, const HeightOptions& opts) {
  ChunkResult out;
  ScreenState st{opts.eps_k};
  std::vector<char> unit(static_cast<std::size_t>(n1));
  for (int r = 0; r < n1; ++r) unit[r] = std::gcd(r, n1) == 1;
  long long residue = begin % n1;
  for (long long n = begin; n < end; ++n, residue = residue + 1 == n1 ? 0 : residue + 1) {
    if (!unit[static_cast<std::size_t>(residue)]) continue;
    std::size_t matched = 0;
    std::optional<HeightSolution> hit;
    if (opts.strategy == HeightStrategy::Bitmask) {
      const std::uint64_t mask = phase_mask(p, static_cast<std::uint64_t>(n), matched);
      if (mask) hit = check_phases(p, nodes, assignment, n, mask, 64, opts.margin_min);
    } else {
      hit = screen_candidate(p, nodes, assignment, n, opts, st, matched);
    }
    out.best_partial = std::max(out.best_partial, matched);
    if (hit) {
      out.hit = hit;
      return out;
    }
  }
  return out;
}

// Number of 1 <= k <= n with gcd(k, n1) = 1, by inclusion-exclusion.
long long coprime_count(long long n, int n1) {
  std::vector<long long> primes;
  long long m = n1;
  for (long long d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      primes.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) primes.push_back(m);
  long long total = 0;
  for (unsigned mask = 0; mask < (1u << primes.size()); ++mask) {
    long long prod = 1;
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (mask & (1u << i)) prod *= primes[i];
    total += (std::popcount(mask) % 2 ? -1 : 1) * (n / prod);
  }
  return total;
}

void validate_options(const HeightOptions& opts, int n1) {
  if (n1 < 1) fail("InvalidFrequency", "n1 must be positive");
  if (opts.n_max < 1) fail("InvalidArgument", "n_max must be positive");
  if (opts.strategy == HeightStrategy::Bitmask && opts.tau_grid != 64)
    fail("InvalidArgument", "the bitmask strategy uses a 64-point tau grid");
  if (opts.tau_grid < 1) fail("InvalidArgument", "tau grid must be positive");
}

[[noreturn]] void exhausted(const HeightOptions& opts, std::size_t best, std::size_t m) {
  fail("BudgetExhausted", "no height found for n4 <= " + std::to_string(opts.n_max) + "; best partial match " +
                              std::to_string(best) + " of " + std::to_string(m) + " nodes");
}

HeightSolution finish(HeightSolution s, int n1) {
  s.iterations = coprime_count(s.n4, n1);
  return s;
}

}  // namespace

HeightSolution kronecker_search_serial(const ParameterPairs& nodes, const SignAssignment& assignment, int n1,
                                       const HeightOptions& opts) {
  validate_options(opts, n1);
  const Prepared p = prepare(nodes, assignment);
  if (nodes.empty()) return HeightSolution{1, 0.0, 2.0, 1};
  const ChunkResult r = scan_chunk(p, nodes, assignment, n1, 1, opts.n_max + 1, opts);
  if (!r.hit) exhausted(opts, r.best_partial, nodes.size());
  return finish(*r.hit, n1);
}

HeightSolution kronecker_search(const ParameterPairs& nodes, const SignAssignment& assignment, int n1,
                                const HeightOptions& opts) {
  validate_options(opts, n1);
  const Prepared p = prepare(nodes, assignment);
  if (nodes.empty()) return HeightSolution{1, 0.0, 2.0, 1};
  if (opts.strategy == HeightStrategy::Screen)
    return kronecker_search_serial(nodes, assignment, n1, opts);  // adaptive eps_k is sequential

  const long long chunk = std::max<long long>(1, opts.chunk);
  std::size_t best_partial = 0;
  const int threads = omp_get_max_threads();
  const long long round = chunk * threads * 4;
  for (long long start = 1; start <= opts.n_max; start += round) {
    const long long stop = std::min(opts.n_max + 1, start + round);
    const long long pieces = (stop - start + chunk - 1) / chunk;
    std::vector<ChunkResult> results(static_cast<std::size_t>(pieces));
#pragma omp parallel for schedule(dynamic, 1)
    for (long long c = 0; c < pieces; ++c) {
      const long long b = start + c * chunk;
      results[static_cast<std::size_t>(c)] = scan_chunk(p, nodes, assignment, n1, b, std::min(stop, b + chunk), opts);
    }
    // Chunks are ordered by n, so the first hit is the minimal one.
    for (const auto& r : results) {
      best_partial = std::max(best_partial, r.best_partial);
      if (r.hit) return finish(*r.hit, n1);
    }
  }
  exhausted(opts, best_partial, nodes.size());
}

}  // namespace knotforge
