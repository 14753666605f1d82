// Serial reference vs OpenMP kernels. Each pair must agree exactly; the
// table reports wall time of both.

#include <chrono>
#include <cstdio>
#include <functional>
#include <omp.h>

#include "knotforge/deformation.hpp"
#include "knotforge/diagram.hpp"
#include "knotforge/height.hpp"
#include "knotforge/invariants.hpp"
#include "knotforge/relation.hpp"

using namespace knotforge;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-22s %12.4f %12.4f %8.2fx  %s\n", name, serial, parallel, serial / parallel, same ? "same" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-22s %12s %12s %9s\n", "kernel", "serial [s]", "openmp [s]", "speedup");

  {
    // a 17-crossing Lissajous diagram: 2^17 states
    const auto knot = lissajous_knot(3, 4, 7, 0.1, 0.23);
    const auto code = extract_diagram(knot).code;
    LaurentPoly a, b;
    const double ts = seconds([&] { a = kauffman_bracket_serial(code); }, reps);
    const double tp = seconds([&] { b = kauffman_bracket(code); }, reps);
    char name[64];
    std::snprintf(name, sizeof name, "bracket (c=%zu)", code.crossing_count());
    row(name, ts, tp, a == b);
  }
  {
    FrequencySet f;
    f.n1 = 3;
    f.n2 = 7;
    f.n3 = 44;
    f.phi = FrequencySet::default_phi(3, 7);
    f.psi = FrequencySet::auto_psi(44);
    const double eps = 0.04;  // n4 stays below 1e8 here; the default 0.5 eps0 needs about 8e8
    const auto params = node_parameters(deformed_nodes(f, eps));
    SignAssignment a;
    for (std::size_t i = 0; i < params.size(); ++i) a.signs.push_back(i % 3 == 1 ? -1 : 1);
    HeightOptions opts;
    opts.n_max = 100000000;
    HeightSolution x, y;
    const double ts = seconds([&] { x = kronecker_search_serial(params, a, 3, opts); }, 1);
    const double tp = seconds([&] { y = kronecker_search(params, a, 3, opts); }, 1);
    row("kronecker (m=32)", ts, tp, x.n4 == y.n4 && x.tau == y.tau);

    NodalCurve c1, c2;
    const std::vector<double> grid{eps, eps / 2, eps / 4};
    const double ns = seconds([&] { c1 = nodal_curve_serial(f, grid, 16); }, reps);
    const double np = seconds([&] { c2 = nodal_curve(f, grid, 16); }, reps);
    bool same = c1.entries.size() == c2.entries.size();
    for (std::size_t i = 0; same && i < c1.entries.size(); ++i)
      same = c1.entries[i].samples == c2.entries[i].samples && c1.entries[i].series.c == c2.entries[i].series.c;
    row("nodal curve (order 16)", ns, np, same);
  }
  {
    const std::vector<double> v{0.1234567891234, 0.9876543219876, 0.5555123412341, 0.3141592653589, 0.2718281828459};
    std::optional<Relation> x, y;
    const double ts = seconds([&] { x = rational_relation_search_serial(v, 12, 1e-10); }, 1);
    const double tp = seconds([&] { y = rational_relation_search(v, 12, 1e-10); }, 1);
    const bool same = x.has_value() == y.has_value() && (!x || x->coeffs == y->coeffs);
    row("relation (n=5, M=12)", ts, tp, same);
  }
  return 0;
}
