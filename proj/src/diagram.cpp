#include "knotforge/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <regex>
#include <sstream>
#include <unordered_map>

#include "knotforge/arith.hpp"
#include "knotforge/errors.hpp"

namespace knotforge {

namespace {

using P2 = std::array<double, 2>;

P2 shadow_at(const FourierKnot112& k, double t) {
  const auto p = k.evaluate(t);
  return {p[0], p[1]};
}

P2 shadow_velocity_at(const FourierKnot112& k, double t) {
  const auto v = k.velocity(t);
  return {v[0], v[1]};
}

double cross(const P2& a, const P2& b) { return a[0] * b[1] - a[1] * b[0]; }
double norm(const P2& a) { return std::hypot(a[0], a[1]); }

// Newton on P(t) = P(s). Returns false if it does not converge.
bool refine_pair(const FourierKnot112& k, double& t, double& s, double tol) {
  for (int it = 0; it < 60; ++it) {
    const P2 a = shadow_at(k, t), b = shadow_at(k, s);
    const P2 da = shadow_velocity_at(k, t), db = shadow_velocity_at(k, s);
    const double fx = a[0] - b[0], fy = a[1] - b[1];
    // J = [da, -db]
    const double det = -da[0] * db[1] + db[0] * da[1];
    if (det == 0.0) return false;
    const double dt = (-fx * -db[1] - (-db[0]) * -fy) / det;
    const double ds = (da[0] * -fy - da[1] * -fx) / det;
    t += dt;
    s += ds;
    if (std::fabs(dt) < tol && std::fabs(ds) < tol) {
      t = frac01(t);
      s = frac01(s);
      return true;
    }
    if (!std::isfinite(t) || !std::isfinite(s)) return false;
  }
  return false;
}

double cyclic_gap(double a, double b) {
  const double d = std::fabs(a - b);
  return std::min(d, 1.0 - d);
}

void check_transverse(const FourierKnot112& k, double t, double s) {
  const P2 da = shadow_velocity_at(k, t), db = shadow_velocity_at(k, s);
  const double na = norm(da), nb = norm(db);
  if (na == 0.0 || nb == 0.0 || std::fabs(cross(da, db)) / (na * nb) < 1e-7)
    fail("NonGenericShadow", "tangential self-intersection near t = " + std::to_string(t));
}

std::vector<ShadowIntersection> sweep_once(const FourierKnot112& k, int N, const SweepOptions& opts) {
  std::vector<P2> pts(N);
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (int i = 0; i < N; ++i) {
    pts[i] = shadow_at(k, static_cast<double>(i) / N);
    xmin = std::min(xmin, pts[i][0]);
    xmax = std::max(xmax, pts[i][0]);
    ymin = std::min(ymin, pts[i][1]);
    ymax = std::max(ymax, pts[i][1]);
  }
  const int G = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(N))));
  const double wx = std::max(xmax - xmin, 1e-12) / G, wy = std::max(ymax - ymin, 1e-12) / G;
  auto cell_x = [&](double x) { return std::clamp(static_cast<int>((x - xmin) / wx), 0, G - 1); };
  auto cell_y = [&](double y) { return std::clamp(static_cast<int>((y - ymin) / wy), 0, G - 1); };

  std::vector<std::vector<int>> cells(static_cast<std::size_t>(G) * G);
  for (int i = 0; i < N; ++i) {
    const P2& a = pts[i];
    const P2& b = pts[(i + 1) % N];
    const int x0 = cell_x(std::min(a[0], b[0])), x1 = cell_x(std::max(a[0], b[0]));
    const int y0 = cell_y(std::min(a[1], b[1])), y1 = cell_y(std::max(a[1], b[1]));
    for (int cx = x0; cx <= x1; ++cx)
      for (int cy = y0; cy <= y1; ++cy) cells[static_cast<std::size_t>(cx) * G + cy].push_back(i);
  }

  std::vector<ShadowIntersection> raw;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& list = cells[c];
    const int cx = static_cast<int>(c / G), cy = static_cast<int>(c % G);
    for (std::size_t u = 0; u < list.size(); ++u)
      for (std::size_t w = u + 1; w < list.size(); ++w) {
        const int i = std::min(list[u], list[w]), j = std::max(list[u], list[w]);
        if (j == i + 1 || (i == 0 && j == N - 1)) continue;
        const P2& p = pts[i];
        const P2& p1 = pts[(i + 1) % N];
        const P2& q = pts[j];
        const P2& q1 = pts[(j + 1) % N];
        const P2 d1{p1[0] - p[0], p1[1] - p[1]}, d2{q1[0] - q[0], q1[1] - q[1]};
        const double den = cross(d1, d2);
        if (den == 0.0) continue;
        const P2 r{q[0] - p[0], q[1] - p[1]};
        const double a = cross(r, d2) / den, b = cross(r, d1) / den;
        if (a < 0.0 || a >= 1.0 || b < 0.0 || b >= 1.0) continue;
        const P2 hit{p[0] + a * d1[0], p[1] + a * d1[1]};
        if (cell_x(hit[0]) != cx || cell_y(hit[1]) != cy) continue;  // counted in its own cell
        double t = (i + a) / N, s = (j + b) / N;
        if (!refine_pair(k, t, s, opts.newton_tol)) continue;
        if (cyclic_gap(t, s) < 1e-6) continue;
        check_transverse(k, t, s);
        if (t > s) std::swap(t, s);
        raw.push_back({t, s, shadow_at(k, t)});
      }
  }

  std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) { return x.t < y.t; });
  std::vector<ShadowIntersection> out;
  for (const auto& h : raw) {
    bool dup = false;
    for (const auto& o : out)
      if (cyclic_gap(o.t, h.t) < opts.dedupe_tol && cyclic_gap(o.s, h.s) < opts.dedupe_tol) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(h);
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (std::fabs(out[i].point[0] - out[j].point[0]) < 1e-9 && std::fabs(out[i].point[1] - out[j].point[1]) < 1e-9)
        fail("NonGenericShadow", "triple point near (" + std::to_string(out[i].point[0]) + ", " +
                                     std::to_string(out[i].point[1]) + ")");
  return out;
}

}  // namespace

std::vector<ShadowIntersection> shadow_intersections(const FourierKnot112& knot, const SweepOptions& opts) {
  int N = opts.initial_samples > 0 ? opts.initial_samples
                                   : std::max<int>(512, static_cast<int>(16 * knot.total_frequency()));
  std::vector<ShadowIntersection> prev;
  bool have_prev = false;
  while (N <= opts.max_samples) {
    auto cur = sweep_once(knot, N, opts);
    if (have_prev && cur.size() == prev.size()) return cur;
    prev = std::move(cur);
    have_prev = true;
    N *= 2;
  }
  fail("NonGenericShadow", "self-intersection count did not stabilize up to " + std::to_string(opts.max_samples) +
                               " samples");
}

namespace {

Crossing make_crossing(const FourierKnot112& k, double t, double s) {
  Crossing c;
  c.t = t;
  c.s = s;
  c.point = shadow_at(k, t);
  const double zt = k.z(t), zs = k.z(s);
  const double gap = zt - zs;
  if (std::fabs(gap) < 1e-9)
    fail("HeightTie", "heights agree within 1e-9 at the crossing near (" + std::to_string(c.point[0]) + ", " +
                          std::to_string(c.point[1]) + ")");
  c.height_sign = gap > 0 ? 1 : -1;
  c.height_gap = std::fabs(gap);
  const P2 over = shadow_velocity_at(k, c.t_over()), under = shadow_velocity_at(k, c.t_under());
  const double cr = cross(over, under);
  c.sign = cr > 0 ? 1 : -1;
  return c;
}

}  // namespace

ExtractedDiagram extract_diagram(const FourierKnot112& knot, const std::optional<NodeTable>& hints,
                                 const SweepOptions& opts) {
  ExtractedDiagram out;
  if (hints) {
    for (const Node& node : hints->nodes) {
      double t = node.t, s = node.s;
      if (!refine_pair(knot, t, s, opts.newton_tol) || cyclic_gap(t, node.t) > 1e-6 || cyclic_gap(s, node.s) > 1e-6)
        fail("NonGenericShadow", "hint node (" + std::to_string(node.k) + "," + std::to_string(node.l) +
                                     ") is not a double point of this shadow");
      check_transverse(knot, t, s);
      out.crossings.push_back(make_crossing(knot, t, s));
    }
  } else {
    for (const auto& h : shadow_intersections(knot, opts)) out.crossings.push_back(make_crossing(knot, h.t, h.s));
  }

  struct Passage {
    double t;
    int crossing;
    bool over;
  };
  std::vector<Passage> pass;
  for (std::size_t i = 0; i < out.crossings.size(); ++i) {
    pass.push_back({out.crossings[i].t_over(), static_cast<int>(i), true});
    pass.push_back({out.crossings[i].t_under(), static_cast<int>(i), false});
  }
  std::sort(pass.begin(), pass.end(), [](const Passage& a, const Passage& b) { return a.t < b.t; });
  int next_id = 1;
  std::vector<GaussEntry> gauss;
  for (const auto& p : pass) {
    Crossing& c = out.crossings[p.crossing];
    if (c.id == 0) c.id = next_id++;
    gauss.push_back({c.id, p.over, c.sign});
  }
  out.code = diagram_from_gauss(gauss);
  return out;
}

std::vector<int> node_height_signs(const ExtractedDiagram& d, const NodeTable& hints) {
  if (d.crossings.size() != hints.nodes.size()) fail("InvalidDiagram", "diagram does not follow the node table");
  std::vector<int> out;
  out.reserve(d.crossings.size());
  for (const auto& c : d.crossings) out.push_back(c.height_sign);
  return out;
}

DiagramCode diagram_from_gauss(const std::vector<GaussEntry>& gauss) {
  const int n = static_cast<int>(gauss.size());
  if (n % 2 != 0) fail("InvalidDiagram", "Gauss code has odd length");
  const int c = n / 2;
  std::vector<int> over_pos(c + 1, -1), under_pos(c + 1, -1), sign(c + 1, 0);
  for (int i = 0; i < n; ++i) {
    const auto& g = gauss[i];
    if (g.crossing < 1 || g.crossing > c) fail("InvalidDiagram", "crossing ids must be 1..c");
    auto& slot = g.over ? over_pos[g.crossing] : under_pos[g.crossing];
    if (slot != -1) fail("InvalidDiagram", "crossing " + std::to_string(g.crossing) + " repeats a passage type");
    slot = i;
    if (g.sign != 1 && g.sign != -1) fail("InvalidDiagram", "crossing signs must be +1 or -1");
    if (sign[g.crossing] != 0 && sign[g.crossing] != g.sign)
      fail("InvalidDiagram", "crossing " + std::to_string(g.crossing) + " has inconsistent signs");
    sign[g.crossing] = g.sign;
  }
  DiagramCode code;
  code.gauss = gauss;
  auto in = [&](int i) { return i == 0 ? n : i; };
  auto out = [&](int i) { return i + 1; };
  for (int x = 1; x <= c; ++x) {
    const int o = over_pos[x], u = under_pos[x];
    if (sign[x] > 0) code.pd.push_back({in(u), out(o), out(u), in(o)});
    else code.pd.push_back({in(u), in(o), out(u), out(o)});
    code.writhe += sign[x];
  }
  return code;
}

DiagramCode reduce_kinks(const DiagramCode& code) {
  std::vector<GaussEntry> g = code.gauss;
  bool changed = true;
  while (changed && !g.empty()) {
    changed = false;
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + 1) % n;
      if (g[i].crossing == g[j].crossing) {
        const int id = g[i].crossing;
        g.erase(std::remove_if(g.begin(), g.end(), [id](const GaussEntry& e) { return e.crossing == id; }),
                g.end());
        changed = true;
        break;
      }
    }
  }
  std::map<int, int> renumber;
  for (auto& e : g) {
    auto it = renumber.find(e.crossing);
    if (it == renumber.end()) it = renumber.emplace(e.crossing, static_cast<int>(renumber.size()) + 1).first;
    e.crossing = it->second;
  }
  return diagram_from_gauss(g);
}

bool valid_diagram(const DiagramCode& code, std::string* why) {
  auto bad = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  const std::size_t n = code.gauss.size();
  if (n % 2) return bad("odd Gauss length");
  std::map<int, std::pair<int, int>> seen;
  for (const auto& e : code.gauss) (e.over ? seen[e.crossing].first : seen[e.crossing].second)++;
  for (const auto& [id, cnt] : seen)
    if (cnt.first != 1 || cnt.second != 1) return bad("crossing " + std::to_string(id) + " not once over and once under");
  if (code.pd.size() * 2 != n) return bad("PD size does not match the Gauss code");
  std::vector<int> uses(n + 1, 0);
  for (const auto& x : code.pd)
    for (int l : x) {
      if (l < 1 || l > static_cast<int>(n)) return bad("PD label out of range");
      uses[l]++;
    }
  for (std::size_t l = 1; l <= n; ++l)
    if (uses[l] != 2) return bad("PD label " + std::to_string(l) + " does not appear twice");
  // Following the under strands and over strands by successor labels must
  // visit every edge in one cycle: each crossing maps one incoming label to
  // one outgoing label on each strand.
  if (n > 0) {
    std::vector<int> succ(n + 1, 0);
    const auto signs = pd_signs(code.pd);
    for (std::size_t i = 0; i < code.pd.size(); ++i) {
      const auto& x = code.pd[i];
      succ[x[0]] = x[2];
      if (signs[i] > 0) succ[x[3]] = x[1];
      else succ[x[1]] = x[3];
    }
    int l = 1;
    for (std::size_t steps = 1; steps <= n; ++steps) {
      l = succ[l];
      if (l == 0) return bad("PD strand is broken");
      if (l == 1 && steps != n) return bad("PD edges form more than one cycle");
    }
    if (l != 1) return bad("PD edges do not close");
  }
  return true;
}

std::string gauss_to_string(const DiagramCode& code) {
  std::ostringstream os;
  for (std::size_t i = 0; i < code.gauss.size(); ++i) {
    const auto& e = code.gauss[i];
    if (i) os << ' ';
    os << (e.over ? 'O' : 'U') << e.crossing << (e.sign > 0 ? '+' : '-');
  }
  return os.str();
}

std::string pd_to_string(const DiagramCode& code) {
  std::ostringstream os;
  os << "PD[";
  for (std::size_t i = 0; i < code.pd.size(); ++i) {
    const auto& x = code.pd[i];
    if (i) os << ", ";
    os << "X(" << x[0] << ',' << x[1] << ',' << x[2] << ',' << x[3] << ')';
  }
  os << ']';
  return os.str();
}

std::vector<PDCrossing> parse_pd(const std::string& text) {
  static const std::regex num("[0-9]+");
  std::vector<int> vals;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), num); it != std::sregex_iterator(); ++it)
    vals.push_back(std::stoi(it->str()));
  if (vals.size() % 4 != 0) fail("InvalidDiagram", "PD code needs groups of four labels");
  std::vector<PDCrossing> pd;
  for (std::size_t i = 0; i < vals.size(); i += 4) pd.push_back({vals[i], vals[i + 1], vals[i + 2], vals[i + 3]});
  return pd;
}

std::vector<GaussEntry> parse_gauss(const std::string& text) {
  static const std::regex tok("([OUou])([0-9]+)([+-])");
  std::vector<GaussEntry> g;
  std::string rest = text;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), tok); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    g.push_back({std::stoi(m[2].str()), m[1].str() == "O" || m[1].str() == "o", m[3].str() == "+" ? 1 : -1});
  }
  return g;
}

std::vector<int> pd_signs(const std::vector<PDCrossing>& pd) {
  const int n = static_cast<int>(pd.size()) * 2;
  auto succ = [n](int x) { return x % n + 1; };
  std::vector<int> s;
  s.reserve(pd.size());
  for (const auto& x : pd) {
    if (n == 2) {
      s.push_back(x[2] == x[3] ? 1 : -1);
    } else if (x[1] == succ(x[3])) {
      s.push_back(1);
    } else if (x[3] == succ(x[1])) {
      s.push_back(-1);
    } else {
      fail("InvalidDiagram", "over strand labels are not consecutive");
    }
  }
  return s;
}

DiagramCode diagram_from_pd(const std::vector<PDCrossing>& pd) {
  const int n = static_cast<int>(pd.size()) * 2;
  if (n == 0) return {};
  const auto signs = pd_signs(pd);
  std::vector<GaussEntry> gauss(n, GaussEntry{0, false, 0});
  std::vector<bool> filled(n, false);
  auto place = [&](int incoming, int id, bool over, int sign) {
    const int pos = incoming % n;  // edge L ends at passage L mod n
    if (filled[pos]) fail("InvalidDiagram", "two passages share edge " + std::to_string(incoming));
    filled[pos] = true;
    gauss[pos] = {id, over, sign};
  };
  for (std::size_t i = 0; i < pd.size(); ++i) {
    const auto& x = pd[i];
    for (int l : x)
      if (l < 1 || l > n) fail("InvalidDiagram", "PD label out of range");
    const int id = static_cast<int>(i) + 1;
    place(x[0], id, false, signs[i]);
    place(signs[i] > 0 ? x[3] : x[1], id, true, signs[i]);
  }
  // Renumber by first appearance so codes compare canonically.
  std::map<int, int> renumber;
  for (auto& e : gauss) {
    auto it = renumber.find(e.crossing);
    if (it == renumber.end()) it = renumber.emplace(e.crossing, static_cast<int>(renumber.size()) + 1).first;
    e.crossing = it->second;
  }
  return diagram_from_gauss(gauss);
}

}  // namespace knotforge
