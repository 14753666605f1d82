#pragma once

// Deterministic JSON output: keys keep insertion order and doubles print
// with 17 significant digits, so the same input gives the same bytes.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "knotforge/deformation.hpp"
#include "knotforge/diagram.hpp"
#include "knotforge/height.hpp"
#include "knotforge/invariants.hpp"
#include "knotforge/lissajous.hpp"
#include "knotforge/pipeline.hpp"
#include "knotforge/precision.hpp"
#include "knotforge/relation.hpp"
#include "knotforge/wronskian.hpp"

namespace knotforge {

class Json {
public:
  enum class Kind { Null, Bool, Int, Real, String, Array, Object };

  Json() = default;
  Json(std::nullptr_t) {}
  Json(bool b) : kind_(Kind::Bool), b_(b) {}
  Json(int v) : kind_(Kind::Int), i_(v) {}
  Json(long v) : kind_(Kind::Int), i_(v) {}
  Json(long long v) : kind_(Kind::Int), i_(v) {}
  Json(unsigned v) : kind_(Kind::Int), i_(v) {}
  Json(unsigned long v) : kind_(Kind::Int), i_(static_cast<long long>(v)) {}
  Json(double v) : kind_(Kind::Real), d_(v) {}
  Json(const char* s) : kind_(Kind::String), s_(s) {}
  Json(std::string s) : kind_(Kind::String), s_(std::move(s)) {}

  static Json array() {
    Json j;
    j.kind_ = Kind::Array;
    return j;
  }
  static Json object() {
    Json j;
    j.kind_ = Kind::Object;
    return j;
  }
  template <class T>
  static Json array_of(const std::vector<T>& v) {
    Json j = array();
    for (const auto& x : v) j.push(Json(x));
    return j;
  }

  Json& push(Json v);
  Json& set(const std::string& key, Json v);  // appends; keys are not deduplicated
  Kind kind() const { return kind_; }

  std::string dump(int indent = 2) const;

private:
  void write(std::string& out, int indent, int depth) const;

  Kind kind_ = Kind::Null;
  bool b_ = false;
  long long i_ = 0;
  double d_ = 0.0;
  std::string s_;
  std::vector<Json> items_;
  std::vector<std::string> keys_;
};

std::string format_real(double v);  // %.17g, "null" for non-finite

Json to_json(const FrequencySet& f);
Json to_json(const Node& n);
Json to_json(const NodeTable& t);
Json to_json(const NodeTable& t, const NodePairing& p);
Json to_json(const NodalCurve& c);
Json to_json(const AlphaBetaTable& t);
Json to_json(const WronskianReport& r);
Json to_json(const std::optional<Relation>& r);
Json to_json(const HeightSolution& h);
Json to_json(const SignCheck& s);
Json to_json(const DiagramCode& d);
Json to_json(const BuildResult& b);
Json to_json(const LaurentPoly& p, const std::string& var);

Json error_json(const std::string& code, const std::string& message);

}  // namespace knotforge
