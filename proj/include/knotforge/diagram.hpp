#pragma once

// Planar diagrams of closed curves.
//
// Crossings come either from an analytic node table (hints) or from a
// polyline sweep of the xy-shadow refined by Newton's method. Traversing
// t in [0, 1) gives the Gauss sequence; passage k is followed by edge k+1
// (edge 2c closes the loop back to passage 0). A crossing is positive when
// the frame (over tangent, under tangent) is counterclockwise.
//
// PD convention: X[a, b, c, d] lists the edges counterclockwise starting at
// the incoming under edge, so a positive crossing is
// X[under_in, over_out, under_out, over_in] and a negative one
// X[under_in, over_in, under_out, over_out].

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "knotforge/curve.hpp"
#include "knotforge/lissajous.hpp"

namespace knotforge {

struct Crossing {
  double t = 0.0;  // parameters of the two passages (node order for hints, t < s otherwise)
  double s = 0.0;
  int height_sign = 0;          // sign(z(t) - z(s)); +1 means the t passage is over
  int sign = 0;                 // crossing sign
  std::array<double, 2> point{};
  double height_gap = 0.0;      // |z(t) - z(s)|
  int id = 0;                   // 1-based id in the Gauss code

  double t_over() const { return height_sign > 0 ? t : s; }
  double t_under() const { return height_sign > 0 ? s : t; }
};

struct GaussEntry {
  int crossing = 0;  // 1-based id
  bool over = false;
  int sign = 0;
};

using PDCrossing = std::array<int, 4>;

struct DiagramCode {
  std::vector<GaussEntry> gauss;
  std::vector<PDCrossing> pd;
  int writhe = 0;

  std::size_t crossing_count() const { return gauss.size() / 2; }
};

struct ShadowIntersection {
  double t = 0.0, s = 0.0;  // t < s
  std::array<double, 2> point{};
};

struct SweepOptions {
  int initial_samples = 0;  // 0: 16 * total frequency, at least 512
  int max_samples = 1 << 20;
  double newton_tol = 1e-13;
  double dedupe_tol = 1e-8;
};

// Transverse self-intersections of the xy-shadow. Throws NonGenericShadow
// on tangencies, triple points, or a count that does not stabilize.
std::vector<ShadowIntersection> shadow_intersections(const FourierKnot112& knot, const SweepOptions& opts = {});

struct ExtractedDiagram {
  std::vector<Crossing> crossings;  // in hint order when hints are given, else by t of the first passage
  DiagramCode code;
};

// Throws NonGenericShadow, HeightTie.
ExtractedDiagram extract_diagram(const FourierKnot112& knot, const std::optional<NodeTable>& hints = std::nullopt,
                                 const SweepOptions& opts = {});

// Signs sign(z(t_i) - z(s_i)) of the hint nodes read off an extracted diagram.
std::vector<int> node_height_signs(const ExtractedDiagram& d, const NodeTable& hints);

// Gauss sequence -> PD code and writhe. Throws InvalidDiagram.
DiagramCode diagram_from_gauss(const std::vector<GaussEntry>& gauss);

// Repeated removal of crossings whose two passages are adjacent.
DiagramCode reduce_kinks(const DiagramCode& code);

// Validity: each id once over, once under; PD labels 1..2c each used twice.
bool valid_diagram(const DiagramCode& code, std::string* why = nullptr);

std::string gauss_to_string(const DiagramCode& code);
std::string pd_to_string(const DiagramCode& code);

// Accept "PD[X[1,4,2,5], ...]", "X(1,4,2,5)" lists or bare integer quadruples.
std::vector<PDCrossing> parse_pd(const std::string& text);
// "O1+ U2- ..." as produced by gauss_to_string.
std::vector<GaussEntry> parse_gauss(const std::string& text);

// Crossing signs of a PD code from the edge orientation.
std::vector<int> pd_signs(const std::vector<PDCrossing>& pd);
DiagramCode diagram_from_pd(const std::vector<PDCrossing>& pd);

}  // namespace knotforge
