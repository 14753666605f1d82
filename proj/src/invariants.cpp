#include "knotforge/invariants.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "knotforge/errors.hpp"

namespace knotforge {

LaurentPoly LaurentPoly::monomial(long long coeff, int quarter_exp) {
  LaurentPoly p;
  p.add(quarter_exp, coeff);
  return p;
}

long long LaurentPoly::coeff(int quarter_exp) const {
  auto it = terms_.find(quarter_exp);
  return it == terms_.end() ? 0 : it->second;
}

void LaurentPoly::add(int quarter_exp, long long c) {
  if (c == 0) return;
  auto& slot = terms_[quarter_exp];
  slot += c;
  if (slot == 0) terms_.erase(quarter_exp);
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add(e, c);
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) r.add(e1 + e2, c1 * c2);
  return r;
}

LaurentPoly LaurentPoly::mirror() const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_) r.add(-e, c);
  return r;
}

long long LaurentPoly::at_minus_one() const {
  long long v = 0;
  for (const auto& [e, c] : terms_) {
    if (e % 4) fail("InvalidArgument", "x = -1 needs integral exponents");
    v += ((e / 4) % 2 ? -c : c);
  }
  return v;
}

std::string LaurentPoly::to_string(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    long long mag = std::llabs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag << '*';
    os << var;
    if (e != 4) {
      os << '^';
      if (e % 4 == 0) {
        os << e / 4;
      } else {
        const int g = std::gcd(std::abs(e), 4);
        os << '(' << e / g << '/' << 4 / g << ')';
      }
    }
  }
  return os.str();
}

namespace {

struct Smoothing {
  int n = 0;  // edge labels 1..n
  std::vector<std::array<int, 4>> x;
};

Smoothing prepare_bracket(const DiagramCode& code) {
  const int c = static_cast<int>(code.pd.size());
  if (c > kBracketMaxCrossings)
    fail("TooManyCrossings", std::to_string(c) + " crossings exceed the state-sum cutoff of " +
                                 std::to_string(kBracketMaxCrossings));
  Smoothing s;
  s.n = 2 * c;
  for (const auto& x : code.pd) {
    for (int l : x)
      if (l < 1 || l > s.n) fail("InvalidDiagram", "PD label out of range");
    s.x.push_back({x[0] - 1, x[1] - 1, x[2] - 1, x[3] - 1});
  }
  return s;
}

int find(std::vector<int>& p, int a) {
  while (p[a] != a) a = p[a] = p[p[a]];
  return a;
}

// Loops of the state with B-smoothings at the set bits of `state`.
int loops(const Smoothing& s, unsigned long state, std::vector<int>& parent) {
  std::iota(parent.begin(), parent.end(), 0);
  int comps = s.n;
  auto join = [&](int a, int b) {
    a = find(parent, a);
    b = find(parent, b);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  };
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const auto& x = s.x[i];
    if (state >> i & 1ul) {
      join(x[0], x[3]);
      join(x[1], x[2]);
    } else {
      join(x[0], x[1]);  // A-smoothing of X[a,b,c,d] joins a-b and c-d
      join(x[2], x[3]);
    }
  }
  return comps;
}

// A^(a - b) d^(L-1), d = -A^2 - A^-2, summed from the (b, L) histogram.
LaurentPoly assemble(const std::vector<long long>& hist, int c) {
  const int width = 2 * c + 2;
  LaurentPoly d = LaurentPoly::monomial(-1, 8) + LaurentPoly::monomial(-1, -8);
  std::vector<LaurentPoly> dpow{LaurentPoly::monomial(1, 0)};
  for (int L = 1; L < width; ++L) dpow.push_back(dpow.back() * d);
  LaurentPoly out;
  for (int b = 0; b <= c; ++b)
    for (int L = 1; L < width; ++L) {
      const long long k = hist[static_cast<std::size_t>(b) * width + L];
      if (!k) continue;
      out = out + LaurentPoly::monomial(k, 4 * (c - 2 * b)) * dpow[L - 1];
    }
  return out;
}

}  // namespace

LaurentPoly kauffman_bracket_serial(const DiagramCode& code) {
  const Smoothing s = prepare_bracket(code);
  const int c = static_cast<int>(s.x.size());
  if (c == 0) return LaurentPoly::monomial(1, 0);
  const int width = 2 * c + 2;
  std::vector<long long> hist(static_cast<std::size_t>(c + 1) * width, 0);
  std::vector<int> parent(s.n);
  for (unsigned long st = 0; st < (1ul << c); ++st)
    ++hist[static_cast<std::size_t>(__builtin_popcountl(st)) * width + loops(s, st, parent)];
  return assemble(hist, c);
}

LaurentPoly kauffman_bracket(const DiagramCode& code) {
  const Smoothing s = prepare_bracket(code);
  const int c = static_cast<int>(s.x.size());
  if (c == 0) return LaurentPoly::monomial(1, 0);
  const int width = 2 * c + 2;
  const std::size_t cells = static_cast<std::size_t>(c + 1) * width;
  std::vector<long long> hist(cells, 0);
  const long long states = 1ll << c;
#pragma omp parallel
  {
    std::vector<long long> local(cells, 0);
    std::vector<int> parent(s.n);
#pragma omp for schedule(static)
    for (long long st = 0; st < states; ++st) {
      const auto u = static_cast<unsigned long>(st);
      ++local[static_cast<std::size_t>(__builtin_popcountl(u)) * width + loops(s, u, parent)];
    }
#pragma omp critical
    for (std::size_t i = 0; i < cells; ++i) hist[i] += local[i];
  }
  return assemble(hist, c);
}

LaurentPoly jones_from_bracket(const LaurentPoly& bracket, int writhe) {
  LaurentPoly norm = LaurentPoly::monomial(writhe % 2 ? -1 : 1, -12 * writhe);
  LaurentPoly inA = norm * bracket;
  LaurentPoly out;
  for (const auto& [e, c] : inA.terms()) {
    // key e is A^(e/4); t = A^-4 makes it the t key -e/4
    if (e % 4) fail("InvalidArgument", "bracket has fractional A exponents");
    out.add(-e / 4, c);
  }
  return out;
}

LaurentPoly jones(const DiagramCode& code) { return jones_from_bracket(kauffman_bracket(code), code.writhe); }

long long alexander_determinant(const DiagramCode& code) {
  using boost::multiprecision::cpp_int;
  const int c = static_cast<int>(code.pd.size());
  if (c == 0) return 1;
  const int n = 2 * c;
  std::vector<int> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& x : code.pd) {
    for (int l : x)
      if (l < 1 || l > n) fail("InvalidDiagram", "PD label out of range");
    const int a = find(parent, x[1]), b = find(parent, x[3]);
    if (a != b) parent[a] = b;
  }
  std::vector<int> arc_id(n + 1, -1);
  int arcs = 0;
  for (int l = 1; l <= n; ++l) {
    const int r = find(parent, l);
    if (arc_id[r] < 0) arc_id[r] = arcs++;
  }
  std::vector<std::vector<cpp_int>> m(c, std::vector<cpp_int>(arcs, 0));
  for (int i = 0; i < c; ++i) {
    const auto& x = code.pd[i];
    m[i][arc_id[find(parent, x[1])]] += 2;
    m[i][arc_id[find(parent, x[0])]] -= 1;
    m[i][arc_id[find(parent, x[2])]] -= 1;
  }
  // First minor: drop the last row and column.
  const int k = std::min(c, arcs) - 1;
  if (k <= 0) return 1;
  std::vector<std::vector<cpp_int>> a(k, std::vector<cpp_int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) a[i][j] = m[i][j];
  // Bareiss fraction-free elimination.
  cpp_int prev = 1;
  int sign = 1;
  for (int p = 0; p < k; ++p) {
    if (a[p][p] == 0) {
      int r = p + 1;
      while (r < k && a[r][p] == 0) ++r;
      if (r == k) return 0;
      std::swap(a[p], a[r]);
      sign = -sign;
    }
    for (int i = p + 1; i < k; ++i) {
      for (int j = p + 1; j < k; ++j) a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev;
      a[i][p] = 0;
    }
    prev = a[p][p];
  }
  cpp_int det = a[k - 1][k - 1] * sign;
  if (det < 0) det = -det;
  return static_cast<long long>(det);
}

}  // namespace knotforge
