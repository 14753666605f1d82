#pragma once

// Closed space curves whose coordinates are finite sums of cosines
// amp * cos 2 pi (freq t + phase), t in [0, 1). Covers both layouts of
// type (1,1,2): two-term y (deformed Lissajous shadow) or two-term z
// (torus knots).

#include <array>
#include <string>
#include <vector>

#include "knotforge/lissajous.hpp"

namespace knotforge {

struct CosTerm {
  double amp = 1.0;
  long long freq = 1;
  double phase = 0.0;  // cycles
};

struct FourierKnot112 {
  FrequencySet freq;  // populated when built from a frequency set
  std::array<std::vector<CosTerm>, 3> coords;
  std::string label;

  std::array<double, 3> evaluate(double t) const;
  std::array<double, 3> velocity(double t) const;
  double z(double t) const;
  long long total_frequency() const;  // sum of |freq| over the shadow terms
};

// x = cos 2pi n1 t, y = cos 2pi n2 (t+phi) + eps cos 2pi n3 (t+phi+psi),
// z = cos 2pi n4 (t+tau). Needs n4; n3 only if eps != 0.
FourierKnot112 fourier_knot(const FrequencySet& freq);

// (cos 2pi p t, cos 2pi (q t + 1/(4p)), cos 2pi (p t + 1/4) + cos 2pi ((q-p) t + 1/(4p))).
// Reproduces T(2,q) (as the left-handed mirror) and T(4,3); not every (p,q).
// Throws NonCoprime, InvalidFrequency.
FourierKnot112 torus_knot_112(int p, int q);

// (cos 2pi nx t, cos 2pi ny (t + phi_y), cos 2pi nz (t + phi_z)).
FourierKnot112 lissajous_knot(int nx, int ny, int nz, double phi_y, double phi_z);

// Planar circle (cos 2pi t, cos 2pi (t + 1/4)) with constant height.
FourierKnot112 round_unknot();

// Same curve with t replaced by t + c.
FourierKnot112 reparametrize(const FourierKnot112& knot, double c);

}  // namespace knotforge
