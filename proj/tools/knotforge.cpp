// knotforge: command line front end.
//
// Exit status: 0 success, 1 domain error (JSON on stderr), 2 usage error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "knotforge/deformation.hpp"
#include "knotforge/errors.hpp"
#include "knotforge/invariants.hpp"
#include "knotforge/json_writer.hpp"
#include "knotforge/pipeline.hpp"
#include "knotforge/precision.hpp"
#include "knotforge/relation.hpp"
#include "knotforge/wronskian.hpp"

using namespace knotforge;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FreqFlags {
  int n1 = 0, n2 = 0;
  std::optional<int> n3;
  std::optional<long long> n4;
  std::optional<double> phi, tau;
  std::string psi = "auto";
  std::optional<double> eps;
};

void add_freq(CLI::App* app, FreqFlags& f, bool with_height = false) {
  app->add_option("--n1", f.n1, "first shadow frequency");
  app->add_option("--n2", f.n2, "second shadow frequency");
  app->add_option("--n3", f.n3, "deformation frequency");
  app->add_option("--phi", f.phi, "shadow phase in cycles, default 1/(8 n1 n2)");
  app->add_option("--psi", f.psi, "deformation phase in cycles, or 'auto' = 1/(8 n3)");
  app->add_option("--eps", f.eps, "deformation amplitude");
  if (with_height) {
    app->add_option("--n4", f.n4, "height frequency");
    app->add_option("--tau", f.tau, "height phase in cycles");
  }
}

void require_shadow(const FreqFlags& f) {
  if (f.n1 == 0) throw UsageError("--n1 is required");
  if (f.n2 == 0) throw UsageError("--n2 is required");
}

FrequencySet to_freq(const FreqFlags& f) {
  FrequencySet s;
  s.n1 = f.n1;
  s.n2 = f.n2;
  s.n3 = f.n3;
  s.n4 = f.n4;
  s.phi = f.phi ? *f.phi : (f.n1 > 0 && f.n2 > 0 ? FrequencySet::default_phi(f.n1, f.n2) : 0.0);
  if (f.n3) {
    if (f.psi == "auto") {
      s.psi = FrequencySet::auto_psi(*f.n3);
    } else {
      try {
        std::size_t used = 0;
        s.psi = std::stod(f.psi, &used);
        if (used != f.psi.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw UsageError("--psi expects a number or 'auto', got '" + f.psi + "'");
      }
    }
  }
  s.tau = f.tau.value_or(0.0);
  s.eps = f.eps.value_or(0.0);
  return s;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("IOError", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "@file" reads the file, anything else is literal.
std::string inline_or_file(const std::string& arg) { return !arg.empty() && arg[0] == '@' ? read_text(arg.substr(1)) : arg; }

struct Output {
  std::string path;
  std::string format = "json";
  bool json = false, csv = false, text = false;
};

void add_output(CLI::App* app, Output& o, const std::vector<std::string>& formats) {
  app->add_option("--format", o.format, "output format")->check(CLI::IsMember(formats));
  app->add_option("-o,--out", o.path, "write to this file instead of stdout");
  for (const auto& f : formats) {
    if (f == "json") app->add_flag("--json", o.json, "same as --format json");
    if (f == "csv") app->add_flag("--csv", o.csv, "same as --format csv");
    if (f == "text") app->add_flag("--text", o.text, "same as --format text");
  }
}

std::string chosen(const Output& o) {
  if (o.json + o.csv + o.text > 1) throw UsageError("choose one of --json, --csv, --text");
  if (o.json) return "json";
  if (o.csv) return "csv";
  if (o.text) return "text";
  return o.format;
}

void emit(const Output& o, const std::string& body) {
  if (o.path.empty()) {
    std::cout << body;
    if (body.empty() || body.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(o.path);
  if (!out) fail("IOError", "cannot write " + o.path);
  out << body;
  if (body.empty() || body.back() != '\n') out << '\n';
}

std::string csv_real(double v) { return format_real(v); }

unsigned precision_bits(const std::optional<unsigned>& flag) {
  const unsigned bits = flag ? *flag : precision_from_env(kDefaultWronskianBits);
  if (bits < 64 || bits > 65536) throw UsageError("--precision must be in [64, 65536]");
  return bits;
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError(flag + ": cannot parse '" + item + "' as a number");
    }
  }
  return out;
}

// ---- knot sources shared by invariants / plot / sample

struct KnotFlags {
  FreqFlags freq;
  std::string torus;      // "p,q"
  std::string lissajous;  // "nx,ny,nz"
  std::string signs;
  long long n_max = 4000000000LL;  // 32 nodes at the default eps need n4 near 1e9
};

void add_knot(CLI::App* app, KnotFlags& k) {
  add_freq(app, k.freq, true);
  app->add_option("--torus", k.torus, "torus knot 'p,q'");
  app->add_option("--lissajous", k.lissajous, "Lissajous knot 'nx,ny,nz' with phases --phi, --tau");
  app->add_option("--signs", k.signs, "build from a sign string or @file (needs --n3)");
  app->add_option("--nmax", k.n_max, "height search budget when building");
}

std::vector<int> int_list(const std::string& text, std::size_t count, const std::string& flag) {
  std::vector<int> out;
  for (double v : parse_list(text, flag)) {
    if (v != std::floor(v)) throw UsageError(flag + " expects integers");
    out.push_back(static_cast<int>(v));
  }
  if (out.size() != count) throw UsageError(flag + " expects " + std::to_string(count) + " integers");
  return out;
}

struct KnotSource {
  FourierKnot112 knot;
  std::optional<NodeTable> hints;
};

KnotSource make_knot(const KnotFlags& k) {
  const int sources = !k.torus.empty() + !k.lissajous.empty() + (k.freq.n1 != 0);
  if (sources != 1) throw UsageError("give exactly one of --torus, --lissajous, or --n1/--n2 frequencies");
  if (!k.torus.empty()) {
    const auto pq = int_list(k.torus, 2, "--torus");
    return {torus_knot_112(pq[0], pq[1]), std::nullopt};
  }
  if (!k.lissajous.empty()) {
    const auto v = int_list(k.lissajous, 3, "--lissajous");
    return {lissajous_knot(v[0], v[1], v[2], k.freq.phi.value_or(0.0), k.freq.tau.value_or(0.0)), std::nullopt};
  }
  require_shadow(k.freq);
  FrequencySet f = to_freq(k.freq);
  if (!k.signs.empty()) {
    if (k.freq.n4) throw UsageError("--n4 and --signs are exclusive");
    BuildOptions opts;
    opts.eps = k.freq.eps;
    opts.height.n_max = k.n_max;
    opts.sweep_check = false;
    BuildResult r = build_knot(f, SignAssignment::parse(inline_or_file(k.signs)), opts);
    return {r.knot, r.nodes};
  }
  if (!k.freq.n4) throw UsageError("--n4 (or --signs) is required for a Fourier knot");
  validate_shadow(f);
  NodeTable hints = f.eps != 0.0 ? deformed_nodes(f, f.eps) : enumerate_nodes(f);
  return {fourier_knot(f), hints};
}

// ---- subcommands

int run_nodes(const FreqFlags& ff, const Output& out) {
  require_shadow(ff);
  const FrequencySet f = to_freq(ff);
  const NodeTable t = f.eps != 0.0 ? (f.n3 ? deformed_nodes(f, f.eps) : (fail("MissingFrequency", "--eps needs --n3"), NodeTable{}))
                                   : enumerate_nodes(f);
  const std::string fmt = chosen(out);
  if (fmt == "json") {
    emit(out, to_json(t).dump());
  } else if (fmt == "csv") {
    std::string s = "k,l,type,t,s,x,y\n";
    for (const auto& n : t.nodes)
      s += std::to_string(n.k) + "," + std::to_string(n.l) + "," + to_string(n.type) + "," + csv_real(n.t) + "," +
           csv_real(n.s) + "," + csv_real(n.point[0]) + "," + csv_real(n.point[1]) + "\n";
    emit(out, s);
  } else {
    std::ostringstream os;
    os << t.nodes.size() << " nodes\n";
    for (const auto& n : t.nodes) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "(%d,%d) %-2s t=%.12f s=%.12f\n", n.k, n.l, to_string(n.type), n.t, n.s);
      os << buf;
    }
    emit(out, os.str());
  }
  return 0;
}

int run_pairs(const FreqFlags& ff, const Output& out) {
  require_shadow(ff);
  FrequencySet f = to_freq(ff);
  f.n3.reset();
  const NodeTable t = enumerate_nodes(f);
  const NodePairing p = couple_nodes(t);
  if (chosen(out) == "json") {
    emit(out, to_json(t, p).dump());
  } else {
    std::ostringstream os;
    os << p.pairs.size() << " pairs\n";
    for (const auto& pr : p.pairs) {
      const Node& a = t.nodes[pr.representative];
      const Node& b = t.nodes[pr.partner];
      os << '(' << a.k << ',' << a.l << ") <-> (" << b.k << ',' << b.l << ") " << to_string(pr.kind) << '\n';
    }
    emit(out, os.str());
  }
  return 0;
}

int run_frequencies(int n1, int count, const Output& out) {
  if (n1 == 0) throw UsageError("--n1 is required");
  if (count < 1) throw UsageError("--count must be positive");
  const auto triples = admissible_frequencies(n1, count);
  if (chosen(out) == "csv") {
    std::string s = "n1,n2,n3\n";
    for (const auto& t : triples) s += std::to_string(n1) + "," + std::to_string(t.n2) + "," + std::to_string(t.n3) + "\n";
    emit(out, s);
    return 0;
  }
  Json arr = Json::array();
  for (const auto& t : triples) arr.push(Json::object().set("n1", n1).set("n2", t.n2).set("n3", t.n3));
  emit(out, Json::object().set("n1", n1).set("triples", std::move(arr)).dump());
  return 0;
}

int run_deform(const FreqFlags& ff, const std::string& eps_list, int order, const Output& out) {
  require_shadow(ff);
  if (!ff.n3) throw UsageError("--n3 is required");
  if (order < 1 || order > 128) throw UsageError("--order must be in [1, 128]");
  std::vector<double> grid = eps_list.empty() ? std::vector<double>{} : parse_list(eps_list, "--eps");
  if (ff.eps) grid.insert(grid.begin(), *ff.eps);
  if (grid.empty()) throw UsageError("--eps is required");
  FrequencySet f = to_freq(ff);
  f.eps = 0.0;
  const NodalCurve c = nodal_curve(f, grid, static_cast<std::size_t>(order));
  if (chosen(out) == "csv") {
    std::string s = "k,l,eps,t\n";
    for (const auto& e : c.entries)
      for (const auto& [eps, t] : e.samples)
        s += std::to_string(e.node.k) + "," + std::to_string(e.node.l) + "," + csv_real(eps) + "," + csv_real(t) + "\n";
    emit(out, s);
  } else {
    emit(out, to_json(c).dump());
  }
  return 0;
}

int run_wronskian(const FreqFlags& ff, std::optional<int> order, std::optional<unsigned> prec, const Output& out) {
  require_shadow(ff);
  if (!ff.n3) throw UsageError("--n3 is required");
  const unsigned bits = precision_bits(prec);
  const int m = lissajous_node_count(ff.n1, ff.n2);
  if (order && *order < m)
    fail("InvalidArgument", "--order " + std::to_string(*order) + " is below the node count m = " + std::to_string(m));
  const WronskianReport r = wronskian_report(ff.n1, ff.n2, *ff.n3, bits, ff.phi);
  if (chosen(out) == "text") {
    std::ostringstream os;
    os << "m = " << r.m << ", " << r.bits << " bits\n"
       << "D0 = " << to_sci_string(r.d0.D0, 12) << " (direct " << to_sci_string(r.d0.D0_direct, 12) << ")\n"
       << "D1 = " << to_sci_string(r.d0.D1, 12) << "\n"
       << "D  = " << to_sci_string(r.full.D, 12) << "\n"
       << "certified: " << (r.certified() ? "yes" : "no") << '\n';
    emit(out, os.str());
  } else {
    emit(out, to_json(r).dump());
  }
  return r.certified() ? 0 : 1;
}

int run_indep(const FreqFlags& ff, const std::string& values, const std::string& eps_list, int take, int max_coeff,
              double tol, const Output& out) {
  if (max_coeff < 1) throw UsageError("--max-coeff must be at least 1");
  if (!(tol > 0)) throw UsageError("--tol must be positive");
  Json runs = Json::array();
  auto one = [&](const std::vector<double>& v, std::optional<double> eps) {
    const auto rel = rational_relation_search(v, max_coeff, tol);
    Json j = to_json(rel);
    if (eps) j.set("eps", *eps);
    j.set("values", Json::array_of(v));
    runs.push(std::move(j));
    return rel.has_value();
  };
  bool any = false;
  if (!values.empty()) {
    if (ff.n1) throw UsageError("--values and frequency flags are exclusive");
    any = one(parse_list(values, "--values"), std::nullopt);
  } else {
    require_shadow(ff);
    if (!ff.n3) throw UsageError("--n3 is required");
    std::vector<double> grid = parse_list(eps_list, "--eps-list");
    if (ff.eps) grid.insert(grid.begin(), *ff.eps);
    if (grid.empty()) throw UsageError("--eps or --eps-list is required");
    FrequencySet f = to_freq(ff);
    f.eps = 0.0;
    const NodalCurve c = nodal_curve(f, grid, 3);
    if (take < 1 || take > static_cast<int>(c.entries.size())) throw UsageError("--take out of range");
    for (std::size_t j = 0; j < grid.size(); ++j) {
      std::vector<double> v;
      for (int i = 0; i < take; ++i) v.push_back(c.entries[i].samples[j].second);
      any = one(v, grid[j]) || any;
    }
  }
  emit(out, Json::object()
                .set("max_coeff", max_coeff)
                .set("tol", tol)
                .set("any_relation", any)
                .set("runs", std::move(runs))
                .dump());
  return 0;
}

ParameterPairs nodes_from_json(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    fail("InvalidInput", path + ": " + e.what());
  }
  const auto& arr = j.contains("nodes") ? j["nodes"] : j;
  if (!arr.is_array()) fail("InvalidInput", path + ": expected a node list");
  ParameterPairs out;
  for (const auto& n : arr) {
    if (!n.contains("t") || !n.contains("s")) fail("InvalidInput", path + ": every node needs t and s");
    out.emplace_back(n["t"].get<double>(), n["s"].get<double>());
  }
  return out;
}

int run_height(const FreqFlags& ff, const std::string& nodes_path, const std::string& signs, HeightOptions opts,
               const std::string& strategy, const Output& out) {
  if (signs.empty()) throw UsageError("--signs is required");
  if (opts.n_max < 1) throw UsageError("--nmax must be positive");
  opts.strategy = strategy == "screen" ? HeightStrategy::Screen : HeightStrategy::Bitmask;
  if (opts.strategy == HeightStrategy::Bitmask) opts.tau_grid = 64;
  ParameterPairs params;
  int n1 = ff.n1;
  if (!nodes_path.empty()) {
    params = nodes_from_json(nodes_path);
    if (n1 == 0) {
      nlohmann::json j = nlohmann::json::parse(read_text(nodes_path), nullptr, false);
      if (j.is_object() && j.contains("freq")) n1 = j["freq"].value("n1", 0);
    }
    if (n1 == 0) throw UsageError("--n1 is required when the node file has no freq");
  } else {
    require_shadow(ff);
    const FrequencySet f = to_freq(ff);
    params = node_parameters(f.eps != 0.0 ? deformed_nodes(f, f.eps) : enumerate_nodes(f));
  }
  const SignAssignment a = SignAssignment::parse(inline_or_file(signs));
  const HeightSolution h = kronecker_search(params, a, n1, opts);
  const SignCheck chk = verify_signs(h.n4, h.tau, params, a);
  Json j = to_json(h);
  j.set("verified", chk.ok).set("signs", a.str());
  emit(out, j.dump());
  return 0;
}

int run_build(const KnotFlags& k, bool sweep, const Output& out) {
  require_shadow(k.freq);
  if (!k.freq.n3) throw UsageError("--n3 is required");
  if (k.signs.empty()) throw UsageError("--signs is required");
  BuildOptions opts;
  opts.eps = k.freq.eps;
  opts.height.n_max = k.n_max;
  opts.sweep_check = sweep;
  const BuildResult r = build_knot(to_freq(k.freq), SignAssignment::parse(inline_or_file(k.signs)), opts);
  if (chosen(out) == "text") {
    std::ostringstream os;
    os << "n4 = " << r.height.n4 << ", tau = " << format_real(r.height.tau) << ", eps = " << format_real(r.freq.eps)
       << "\nmargin = " << format_real(r.check.margin) << "\nsigns " << r.extracted
       << (r.signs_match() ? " (match)" : " (MISMATCH)") << "\ngauss " << gauss_to_string(r.diagram.code) << '\n';
    emit(out, os.str());
  } else {
    emit(out, to_json(r).dump());
  }
  return 0;
}

int run_invariants(const KnotFlags& k, const std::string& pd, const std::string& gauss, bool no_reduce,
                   const Output& out) {
  DiagramCode code;
  std::string source;
  if (!pd.empty() || !gauss.empty()) {
    if (!pd.empty() && !gauss.empty()) throw UsageError("--pd and --gauss are exclusive");
    if (!k.torus.empty() || !k.lissajous.empty() || k.freq.n1) throw UsageError("--pd/--gauss exclude knot flags");
    code = !pd.empty() ? diagram_from_pd(parse_pd(inline_or_file(pd))) : diagram_from_gauss(parse_gauss(inline_or_file(gauss)));
    source = !pd.empty() ? "pd" : "gauss";
  } else {
    const KnotSource ks = make_knot(k);
    code = extract_diagram(ks.knot, ks.hints).code;
    source = ks.knot.label;
  }
  std::string why;
  if (!valid_diagram(code, &why)) fail("InvalidDiagram", why);
  const std::size_t raw = code.crossing_count();
  if (!no_reduce) code = reduce_kinks(code);
  const long long det = alexander_determinant(code);
  std::optional<LaurentPoly> v;
  if (code.crossing_count() <= static_cast<std::size_t>(kBracketMaxCrossings)) v = jones(code);
  if (chosen(out) == "text") {
    std::ostringstream os;
    os << "crossings " << raw << " -> " << code.crossing_count() << ", writhe " << code.writhe << "\n"
       << "determinant " << det << "\n"
       << "jones " << (v ? v->to_string("t") : std::string("(too many crossings)")) << '\n';
    emit(out, os.str());
    return 0;
  }
  Json j = Json::object();
  j.set("source", source).set("raw_crossings", raw).set("diagram", to_json(code)).set("determinant", det);
  j.set("jones", v ? to_json(*v, "t") : Json());
  j.set("bracket", v ? to_json(kauffman_bracket(code), "A") : Json());
  emit(out, j.dump());
  return 0;
}

std::string render_svg(const FourierKnot112& knot, const ExtractedDiagram& d, int samples) {
  const double size = 600, pad = 30;
  std::vector<std::array<double, 2>> pts(samples + 1);
  double lo = 1e300, hi = -1e300;
  for (int i = 0; i <= samples; ++i) {
    const auto p = knot.evaluate(static_cast<double>(i) / samples);
    pts[i] = {p[0], p[1]};
    lo = std::min({lo, p[0], p[1]});
    hi = std::max({hi, p[0], p[1]});
  }
  const double scale = (size - 2 * pad) / std::max(hi - lo, 1e-9);
  auto X = [&](double x) { return pad + (x - lo) * scale; };
  auto Y = [&](double y) { return size - pad - (y - lo) * scale; };
  // Parameter gaps around each under passage, about 8 px of arc length.
  std::vector<std::pair<double, double>> gaps;
  for (const auto& c : d.crossings) {
    const auto v = knot.velocity(c.t_under());
    const double speed = std::max(std::hypot(v[0], v[1]) * scale, 1e-9);
    const double h = 8.0 / speed;
    gaps.emplace_back(c.t_under() - h, c.t_under() + h);
  }
  auto in_gap = [&](double t) {
    for (const auto& [a, b] : gaps)
      for (double shift : {-1.0, 0.0, 1.0})
        if (t >= a + shift && t <= b + shift) return true;
    return false;
  };
  std::ostringstream os;
  char buf[96];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
  os << "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
  os << "<g fill=\"none\" stroke=\"black\" stroke-width=\"2\" stroke-linecap=\"round\">\n";
  bool open = false;
  for (int i = 0; i <= samples; ++i) {
    const double t = static_cast<double>(i) / samples;
    if (in_gap(t)) {
      if (open) os << "\"/>\n";
      open = false;
      continue;
    }
    std::snprintf(buf, sizeof buf, "%.2f,%.2f", X(pts[i][0]), Y(pts[i][1]));
    if (!open) {
      os << "<polyline points=\"" << buf;
      open = true;
    } else {
      os << ' ' << buf;
    }
  }
  if (open) os << "\"/>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

int run_plot(const KnotFlags& k, const std::string& svg_path, int samples, Output out) {
  if (samples < 64) throw UsageError("--samples must be at least 64");
  const KnotSource ks = make_knot(k);
  const ExtractedDiagram d = extract_diagram(ks.knot, ks.hints);
  if (!svg_path.empty()) out.path = svg_path;
  emit(out, render_svg(ks.knot, d, samples));
  return 0;
}

int run_sample(const KnotFlags& k, int samples, const Output& out) {
  if (samples < 1) throw UsageError("--samples must be positive");
  const KnotSource ks = make_knot(k);
  if (chosen(out) == "json") {
    Json rows = Json::array();
    for (int i = 0; i < samples; ++i) {
      const double t = static_cast<double>(i) / samples;
      const auto p = ks.knot.evaluate(t);
      rows.push(Json::array().push(t).push(p[0]).push(p[1]).push(p[2]));
    }
    emit(out, Json::object().set("label", ks.knot.label).set("rows", std::move(rows)).dump());
    return 0;
  }
  std::string s = "t,x,y,z\n";
  for (int i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / samples;
    const auto p = ks.knot.evaluate(t);
    s += csv_real(t) + "," + csv_real(p[0]) + "," + csv_real(p[1]) + "," + csv_real(p[2]) + "\n";
  }
  emit(out, s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"knotforge: Fourier knots of type (1,1,2) from Lissajous shadows"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  FreqFlags nodes_f, pairs_f, deform_f, wr_f, indep_f, height_f;
  Output nodes_o, pairs_o, freq_o, deform_o, wr_o, indep_o, height_o, build_o, inv_o, plot_o, sample_o;
  KnotFlags build_k, inv_k, plot_k, sample_k;

  auto* nodes = app.add_subcommand("nodes", "double points of a (deformed) Lissajous shadow");
  add_freq(nodes, nodes_f);
  add_output(nodes, nodes_o, {"json", "csv", "text"});

  auto* pairs = app.add_subcommand("pairs", "couple the nodes of an odd-frequency shadow");
  add_freq(pairs, pairs_f);
  add_output(pairs, pairs_o, {"json", "text"});

  int fr_n1 = 0, fr_count = 3;
  auto* freqs = app.add_subcommand("frequencies", "admissible (n2, n3) for a prime n1");
  freqs->add_option("--n1", fr_n1, "odd prime");
  freqs->add_option("--count", fr_count, "how many triples");
  add_output(freqs, freq_o, {"json", "csv"});

  std::string deform_grid;
  int deform_order = 8;
  auto* deform = app.add_subcommand("deform", "nodal curve of the deformed shadow");
  add_freq(deform, deform_f);
  deform->add_option("--eps-list", deform_grid, "additional comma-separated eps samples");
  deform->add_option("--order", deform_order, "series order");
  add_output(deform, deform_o, {"json", "csv"});

  std::optional<int> wr_order;
  std::optional<unsigned> wr_prec;
  auto* wr = app.add_subcommand("wronskian", "skewness certificate of the nodal curve");
  add_freq(wr, wr_f);
  wr->add_option("--order", wr_order, "series order (at least the node count)");
  wr->add_option("--precision", wr_prec, "working precision in bits (env KNOTFORGE_PRECISION)");
  add_output(wr, wr_o, {"json", "text"});

  std::string indep_values, indep_grid;
  int indep_take = 3, indep_max = 20;
  double indep_tol = 1e-9;
  auto* indep = app.add_subcommand("indep", "search small integer relations among values or node parameters");
  add_freq(indep, indep_f);
  indep->add_option("--values", indep_values, "comma-separated reals");
  indep->add_option("--eps-list", indep_grid, "comma-separated eps samples");
  indep->add_option("--take", indep_take, "number of node parameters per sample");
  indep->add_option("--max-coeff", indep_max, "coefficient bound");
  indep->add_option("--tol", indep_tol, "residual tolerance");
  add_output(indep, indep_o, {"json"});

  std::string height_nodes, height_signs, height_strategy = "bitmask";
  HeightOptions height_opts;
  auto* height = app.add_subcommand("height", "find n4, tau realizing crossing signs");
  add_freq(height, height_f);
  height->add_option("--nodes", height_nodes, "node JSON as written by 'nodes'");
  height->add_option("--signs", height_signs, "sign string or @file");
  height->add_option("--nmax", height_opts.n_max, "largest n4 to try");
  height->add_option("--margin", height_opts.margin_min, "minimal height separation");
  height->add_option("--strategy", height_strategy, "bitmask or screen")->check(CLI::IsMember({"bitmask", "screen"}));
  height->add_option("--tau-grid", height_opts.tau_grid, "tau grid size (screen strategy)");
  height->add_option("--eps-k", height_opts.eps_k, "screen closeness target");
  add_output(height, height_o, {"json"});

  bool build_sweep = false;
  auto* build = app.add_subcommand("build", "deform, search the height, assemble and check the knot");
  add_knot(build, build_k);
  build->add_flag("--sweep", build_sweep, "also find crossings numerically without the node table");
  add_output(build, build_o, {"json", "text"});

  std::string inv_pd, inv_gauss;
  bool inv_no_reduce = false;
  auto* inv = app.add_subcommand("invariants", "Jones polynomial and determinant of a diagram");
  add_knot(inv, inv_k);
  inv->add_option("--pd", inv_pd, "PD code text or @file");
  inv->add_option("--gauss", inv_gauss, "Gauss code text or @file");
  inv->add_flag("--no-reduce", inv_no_reduce, "skip kink removal");
  add_output(inv, inv_o, {"json", "text"});

  std::string plot_svg;
  int plot_samples = 4000;
  auto* plot = app.add_subcommand("plot", "SVG of the shadow with over/under gaps");
  add_knot(plot, plot_k);
  plot->add_option("--svg", plot_svg, "output SVG path");
  plot->add_option("--samples", plot_samples, "polyline samples");
  plot->add_option("-o,--out", plot_o.path, "same as --svg");

  int sample_n = 1000;
  auto* sample = app.add_subcommand("sample", "t,x,y,z samples of a knot");
  add_knot(sample, sample_k);
  sample->add_option("--samples", sample_n, "number of samples");
  sample_o.format = "csv";
  add_output(sample, sample_o, {"csv", "json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*nodes) return run_nodes(nodes_f, nodes_o);
    if (*pairs) return run_pairs(pairs_f, pairs_o);
    if (*freqs) return run_frequencies(fr_n1, fr_count, freq_o);
    if (*deform) return run_deform(deform_f, deform_grid, deform_order, deform_o);
    if (*wr) return run_wronskian(wr_f, wr_order, wr_prec, wr_o);
    if (*indep) return run_indep(indep_f, indep_values, indep_grid, indep_take, indep_max, indep_tol, indep_o);
    if (*height) return run_height(height_f, height_nodes, height_signs, height_opts, height_strategy, height_o);
    if (*build) return run_build(build_k, build_sweep, build_o);
    if (*inv) return run_invariants(inv_k, inv_pd, inv_gauss, inv_no_reduce, inv_o);
    if (*plot) return run_plot(plot_k, plot_svg, plot_samples, plot_o);
    if (*sample) return run_sample(sample_k, sample_n, sample_o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nRun with --help for more information.\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << error_json(e.code(), e.what()).dump(0) << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << error_json("InternalError", e.what()).dump(0) << '\n';
    return 1;
  }
  return 2;
}
