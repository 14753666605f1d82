#include "knotforge/json_writer.hpp"

#include <cmath>
#include <cstdio>

namespace knotforge {

Json& Json::push(Json v) {
  items_.push_back(std::move(v));
  return *this;
}

Json& Json::set(const std::string& key, Json v) {
  keys_.push_back(key);
  items_.push_back(std::move(v));
  return *this;
}

std::string format_real(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void escape(std::string& out, const std::string& s) {
  out.push_back('"');
  for (unsigned char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (ch < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out.push_back(static_cast<char>(ch));
        }
    }
  }
  out.push_back('"');
}

void newline(std::string& out, int indent, int depth) {
  if (indent <= 0) return;
  out.push_back('\n');
  out.append(static_cast<std::size_t>(indent * depth), ' ');
}

}  // namespace

void Json::write(std::string& out, int indent, int depth) const {
  switch (kind_) {
    case Kind::Null: out += "null"; return;
    case Kind::Bool: out += b_ ? "true" : "false"; return;
    case Kind::Int: out += std::to_string(i_); return;
    case Kind::Real: out += format_real(d_); return;
    case Kind::String: escape(out, s_); return;
    case Kind::Array:
    case Kind::Object: break;
  }
  const bool obj = kind_ == Kind::Object;
  out.push_back(obj ? '{' : '[');
  if (items_.empty()) {
    out.push_back(obj ? '}' : ']');
    return;
  }
  // short scalar arrays stay on one line
  bool flat = !obj && items_.size() <= 16;
  for (const auto& it : items_)
    if (it.kind_ == Kind::Array || it.kind_ == Kind::Object || it.kind_ == Kind::String) flat = false;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i) out.push_back(',');
    if (flat) {
      if (i && indent > 0) out.push_back(' ');
    } else {
      newline(out, indent, depth + 1);
    }
    if (obj) {
      escape(out, keys_[i]);
      out += indent > 0 ? ": " : ":";
    }
    items_[i].write(out, indent, depth + 1);
  }
  if (!flat) newline(out, indent, depth);
  out.push_back(obj ? '}' : ']');
}

std::string Json::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  return out;
}

namespace {

Json high(const HighReal& x) { return Json(to_sci_string(x, 20)); }

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json();
}

Json pair_array(double a, double b) { return Json::array().push(a).push(b); }

}  // namespace

Json to_json(const FrequencySet& f) {
  Json j = Json::object();
  j.set("n1", f.n1).set("n2", f.n2).set("n3", opt(f.n3)).set("n4", opt(f.n4));
  j.set("phi", f.phi).set("psi", f.psi).set("tau", f.tau).set("eps", f.eps);
  return j;
}

Json to_json(const Node& n) {
  Json j = Json::object();
  j.set("k", n.k).set("l", n.l).set("type", to_string(n.type)).set("t", n.t).set("s", n.s);
  j.set("point", pair_array(n.point[0], n.point[1]));
  return j;
}

Json to_json(const NodeTable& t) {
  Json nodes = Json::array();
  std::size_t type_one = 0;
  for (const auto& n : t.nodes) {
    nodes.push(to_json(n));
    type_one += n.type == NodeType::I;
  }
  Json j = Json::object();
  j.set("freq", to_json(t.freq)).set("count", t.nodes.size()).set("type_I", type_one);
  j.set("type_II", t.nodes.size() - type_one).set("nodes", std::move(nodes));
  return j;
}

Json to_json(const NodeTable& t, const NodePairing& p) {
  Json pairs = Json::array();
  for (const auto& pr : p.pairs) {
    const Node& a = t.nodes[pr.representative];
    const Node& b = t.nodes[pr.partner];
    Json e = Json::object();
    e.set("representative", Json::array().push(a.k).push(a.l));
    e.set("partner", Json::array().push(b.k).push(b.l));
    e.set("kind", to_string(pr.kind));
    pairs.push(std::move(e));
  }
  Json j = Json::object();
  j.set("freq", to_json(t.freq)).set("count", p.pairs.size()).set("pairs", std::move(pairs));
  return j;
}

Json to_json(const NodalCurve& c) {
  Json entries = Json::array();
  for (const auto& e : c.entries) {
    Json s = Json::array();
    for (const auto& [eps, t] : e.samples) s.push(pair_array(eps, t));
    Json j = Json::object();
    j.set("k", e.node.k).set("l", e.node.l).set("type", to_string(e.node.type)).set("base", e.base);
    j.set("a", e.spec.a).set("r", e.spec.r).set("shift", e.spec.shift).set("radius", e.radius);
    j.set("series", Json::array_of(e.series.c)).set("samples", std::move(s));
    entries.push(std::move(j));
  }
  Json j = Json::object();
  j.set("freq", to_json(c.freq)).set("eps0", c.eps0).set("entries", std::move(entries));
  return j;
}

Json to_json(const AlphaBetaTable& t) {
  Json rows = Json::array();
  for (const auto& e : t.entries) {
    Json r = Json::object();
    r.set("k", e.node.k).set("l", e.node.l).set("type", to_string(e.node.type));
    r.set("alpha", high(e.alpha)).set("beta", high(e.beta));
    rows.push(std::move(r));
  }
  Json j = Json::object();
  j.set("n1", t.n1).set("n2", t.n2).set("n3", t.n3).set("phi", t.phi).set("psi", t.psi).set("entries", std::move(rows));
  return j;
}

Json to_json(const WronskianReport& r) {
  Json c = Json::array();
  for (std::size_t n = 1; n < r.c.size(); ++n) c.push(high(r.c[n]));
  Json v = Json::object();
  v.set("c_positive", r.verdicts.c_positive).set("alphas_nonzero", r.verdicts.alphas_nonzero);
  v.set("betas_nonzero", r.verdicts.betas_nonzero).set("alphas_distinct", r.verdicts.alphas_distinct);
  v.set("D0_nonzero", r.verdicts.D0_nonzero).set("D_nonzero", r.verdicts.D_nonzero);
  Json full = Json::object();
  full.set("D", high(r.full.D)).set("D_check", high(r.full.D_check)).set("scaled", high(r.full.scaled));
  full.set("log10_scale", high(r.full.log_scale)).set("noise_floor", high(r.full.noise_floor));
  full.set("exact_zero", r.full.exact_zero);
  if (!r.full_error.empty()) full.set("error", r.full_error);
  Json j = Json::object();
  j.set("n1", r.n1).set("n2", r.n2).set("n3", r.n3).set("phi", r.phi).set("psi", r.psi);
  j.set("m", r.m).set("bits", r.bits);
  j.set("D0", high(r.d0.D0)).set("D0_direct", high(r.d0.D0_direct));
  j.set("D1", high(r.d0.D1)).set("D1_direct", high(r.d0.D1_direct)).set("D1_literal", high(r.d0.D1_literal));
  j.set("d0_relative_disagreement", r.d0_relative_disagreement);
  j.set("d1_relative_disagreement", r.d1_relative_disagreement);
  j.set("min_alpha2_gap", r.d0.min_alpha2_gap);
  j.set("full", std::move(full)).set("c", std::move(c)).set("verdicts", std::move(v));
  j.set("certified", r.certified());
  return j;
}

Json to_json(const std::optional<Relation>& r) {
  Json j = Json::object();
  j.set("found", r.has_value());
  if (r) j.set("coeffs", Json::array_of(r->coeffs)).set("residual", r->residual).set("height", r->height);
  return j;
}

Json to_json(const HeightSolution& h) {
  Json j = Json::object();
  j.set("n4", h.n4).set("tau", h.tau).set("margin", h.margin).set("iterations", h.iterations);
  return j;
}

Json to_json(const SignCheck& s) {
  Json mism = Json::array();
  for (auto i : s.mismatches) mism.push(static_cast<long long>(i));
  Json j = Json::object();
  j.set("ok", s.ok).set("margin", s.margin).set("realized", Json::array_of(s.realized));
  j.set("differences", Json::array_of(s.differences)).set("mismatches", std::move(mism));
  return j;
}

Json to_json(const DiagramCode& d) {
  Json pd = Json::array();
  for (const auto& x : d.pd) pd.push(Json::array().push(x[0]).push(x[1]).push(x[2]).push(x[3]));
  Json j = Json::object();
  j.set("crossings", d.crossing_count()).set("writhe", d.writhe).set("gauss", gauss_to_string(d));
  j.set("pd_text", pd_to_string(d)).set("pd", std::move(pd));
  return j;
}

Json to_json(const BuildResult& b) {
  Json j = Json::object();
  j.set("freq", to_json(b.freq)).set("eps0", b.eps0).set("height", to_json(b.height));
  j.set("requested", b.requested).set("extracted", b.extracted).set("signs_match", b.signs_match());
  j.set("margin", b.check.margin).set("diagram", to_json(b.diagram.code));
  j.set("sweep_crossings", b.sweep_crossings ? Json(static_cast<long long>(*b.sweep_crossings)) : Json());
  return j;
}

Json to_json(const LaurentPoly& p, const std::string& var) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json t = Json::object();
    if (e % 4 == 0) t.set("exp", e / 4);
    else t.set("exp", e / 4.0);
    t.set("coeff", c);
    terms.push(std::move(t));
  }
  Json j = Json::object();
  j.set("text", p.to_string(var)).set("terms", std::move(terms));
  return j;
}

Json error_json(const std::string& code, const std::string& message) {
  Json j = Json::object();
  j.set("error", code).set("message", message);
  return j;
}

}  // namespace knotforge
