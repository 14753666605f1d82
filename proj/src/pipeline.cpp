#include "knotforge/pipeline.hpp"

#include "knotforge/deformation.hpp"
#include "knotforge/errors.hpp"

namespace knotforge {

BuildResult build_knot(const FrequencySet& shadow, const SignAssignment& assignment, const BuildOptions& opts) {
  if (!shadow.n3) fail("MissingFrequency", "build needs the deformation frequency n3");
  BuildResult r;
  r.freq = shadow;
  r.eps0 = deformation_radius(shadow);
  const double eps = opts.eps ? *opts.eps : opts.eps_fraction * r.eps0;
  if (eps < 0.0 || eps > r.eps0)
    fail("RadiusExceeded", "eps = " + std::to_string(eps) + " outside [0, eps0 = " + std::to_string(r.eps0) + "]");
  r.freq.eps = eps;
  r.nodes = deformed_nodes(shadow, eps);
  if (assignment.size() != r.nodes.nodes.size())
    fail("InvalidSigns", "need " + std::to_string(r.nodes.nodes.size()) + " signs, got " +
                             std::to_string(assignment.size()));
  r.requested = assignment.str();

  const ParameterPairs params = node_parameters(r.nodes);
  r.height = kronecker_search(params, assignment, shadow.n1, opts.height);
  r.freq.n4 = r.height.n4;
  r.freq.tau = r.height.tau;
  r.check = verify_signs(r.freq, params, assignment);

  r.knot = fourier_knot(r.freq);
  r.diagram = extract_diagram(r.knot, r.nodes);
  SignAssignment got;
  got.signs = node_height_signs(r.diagram, r.nodes);
  r.extracted = got.str();
  if (opts.sweep_check) r.sweep_crossings = shadow_intersections(r.knot).size();
  if (!r.signs_match())
    fail("SignMismatch", "diagram signs " + r.extracted + " differ from the request " + r.requested);
  return r;
}

}  // namespace knotforge
