#pragma once

// End to end: deform the Lissajous shadow, search a height frequency for the
// requested crossing signs, assemble the Fourier knot and read its diagram
// back to confirm the signs.

#include <optional>
#include <string>

#include "knotforge/curve.hpp"
#include "knotforge/diagram.hpp"
#include "knotforge/height.hpp"
#include "knotforge/lissajous.hpp"

namespace knotforge {

struct BuildOptions {
  std::optional<double> eps;         // default: eps_fraction * eps0
  double eps_fraction = 0.5;
  HeightOptions height;
  bool sweep_check = true;           // also find the crossings without hints
};

struct BuildResult {
  FrequencySet freq;                 // with eps, n4 and tau filled in
  double eps0 = 0.0;
  NodeTable nodes;                   // deformed nodes
  HeightSolution height;
  SignCheck check;                   // verify_signs on the deformed nodes
  FourierKnot112 knot;
  ExtractedDiagram diagram;
  std::string requested;             // "+-..." in node order
  std::string extracted;             // height signs read off the diagram
  std::optional<std::size_t> sweep_crossings;

  bool signs_match() const { return requested == extracted && check.ok; }
};

// Needs n3 (MissingFrequency). Propagates BudgetExhausted, NonGenericShadow,
// HeightTie. Throws SignMismatch if the diagram disagrees with the request.
BuildResult build_knot(const FrequencySet& shadow, const SignAssignment& assignment, const BuildOptions& opts = {});

}  // namespace knotforge
