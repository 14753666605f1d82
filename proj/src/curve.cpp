#include "knotforge/curve.hpp"

#include <cmath>
#include <cstdlib>

#include "knotforge/arith.hpp"
#include "knotforge/errors.hpp"

namespace knotforge {

namespace {

constexpr long double kTwoPi = 6.283185307179586476925286766559005768L;

long double phase_of(const CosTerm& term, double t) {
  const long double ft = static_cast<long double>(term.freq) * t;
  return (ft - std::floor(ft)) + term.phase;
}

long double sum_value(const std::vector<CosTerm>& terms, double t) {
  long double v = 0;
  for (const auto& c : terms) v += c.amp * cos_turns(phase_of(c, t));
  return v;
}

long double sum_derivative(const std::vector<CosTerm>& terms, double t) {
  long double v = 0;
  for (const auto& c : terms) v -= c.amp * kTwoPi * static_cast<long double>(c.freq) * sin_turns(phase_of(c, t));
  return v;
}

}  // namespace

std::array<double, 3> FourierKnot112::evaluate(double t) const {
  return {static_cast<double>(sum_value(coords[0], t)), static_cast<double>(sum_value(coords[1], t)),
          static_cast<double>(sum_value(coords[2], t))};
}

std::array<double, 3> FourierKnot112::velocity(double t) const {
  return {static_cast<double>(sum_derivative(coords[0], t)), static_cast<double>(sum_derivative(coords[1], t)),
          static_cast<double>(sum_derivative(coords[2], t))};
}

double FourierKnot112::z(double t) const { return static_cast<double>(sum_value(coords[2], t)); }

long long FourierKnot112::total_frequency() const {
  long long f = 0;
  for (int c = 0; c < 2; ++c)
    for (const auto& term : coords[c]) f += std::llabs(term.freq);
  return f;
}

FourierKnot112 fourier_knot(const FrequencySet& freq) {
  if (!freq.n4) fail("MissingFrequency", "a Fourier knot needs the height frequency n4");
  if (freq.eps != 0.0 && !freq.n3) fail("MissingFrequency", "eps != 0 needs n3");
  FourierKnot112 k;
  k.freq = freq;
  k.coords[0] = {{1.0, freq.n1, 0.0}};
  k.coords[1] = {{1.0, freq.n2, frac01(freq.n2 * freq.phi)}};
  if (freq.eps != 0.0)
    k.coords[1].push_back({freq.eps, *freq.n3, frac01(*freq.n3 * (freq.phi + freq.psi))});
  const long double n4tau = static_cast<long double>(*freq.n4) * freq.tau;
  k.coords[2] = {{1.0, *freq.n4, frac01(static_cast<double>(n4tau - std::floor(n4tau)))}};
  k.label = "fourier(" + std::to_string(freq.n1) + "," + std::to_string(freq.n2) + "," +
            (freq.n3 ? std::to_string(*freq.n3) : std::string("-")) + "," + std::to_string(*freq.n4) + ")";
  return k;
}

FourierKnot112 torus_knot_112(int p, int q) {
  if (p < 2 || q < 2) fail("InvalidFrequency", "torus knot needs p, q >= 2");
  if (!coprime(p, q)) fail("NonCoprime", "gcd(p, q) != 1");
  FourierKnot112 k;
  k.coords[0] = {{1.0, p, 0.0}};
  // phase 1/(4p), not q/(4p): the latter puts two strands at equal height over the origin for (2,3)
  k.coords[1] = {{1.0, q, frac01(1.0 / (4.0 * p))}};
  k.coords[2] = {{1.0, p, 0.25}, {1.0, q - p, frac01(1.0 / (4.0 * p))}};
  k.freq.n1 = p;
  k.freq.n2 = q;
  k.label = "torus(" + std::to_string(p) + "," + std::to_string(q) + ")";
  return k;
}

FourierKnot112 lissajous_knot(int nx, int ny, int nz, double phi_y, double phi_z) {
  if (nx < 1 || ny < 1 || nz < 1) fail("InvalidFrequency", "frequencies must be positive");
  FourierKnot112 k;
  k.coords[0] = {{1.0, nx, 0.0}};
  k.coords[1] = {{1.0, ny, frac01(ny * phi_y)}};
  k.coords[2] = {{1.0, nz, frac01(nz * phi_z)}};
  k.freq.n1 = nx;
  k.freq.n2 = ny;
  k.freq.n4 = nz;
  k.freq.phi = phi_y;
  k.freq.tau = phi_z;
  k.label = "lissajous(" + std::to_string(nx) + "," + std::to_string(ny) + "," + std::to_string(nz) + ")";
  return k;
}

FourierKnot112 round_unknot() {
  FourierKnot112 k;
  k.coords[0] = {{1.0, 1, 0.0}};
  k.coords[1] = {{1.0, 1, 0.25}};
  k.coords[2] = {{0.0, 1, 0.0}};
  k.label = "circle";
  return k;
}

FourierKnot112 reparametrize(const FourierKnot112& knot, double c) {
  FourierKnot112 out = knot;
  for (auto& coord : out.coords)
    for (auto& term : coord) {
      const long double ph = term.phase + static_cast<long double>(term.freq) * c;
      term.phase = frac01(static_cast<double>(ph - std::floor(ph)));
    }
  out.label = knot.label + "+shift";
  return out;
}

}  // namespace knotforge
