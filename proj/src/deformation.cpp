#include "knotforge/deformation.hpp"

#include <algorithm>
#include <exception>
#include <omp.h>

namespace knotforge {

std::vector<std::pair<double, double>> NodalCurve::parameters_at(std::size_t j) const {
  std::vector<std::pair<double, double>> out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    const double t = e.samples.at(j).second;
    out.emplace_back(t, companion_parameter(freq.n1, e.node, t));
  }
  return out;
}

namespace {

void check_deformable(const FrequencySet& freq) {
  if (!freq.n3) fail("MissingFrequency", "deformation needs n3");
}

[[noreturn]] void rethrow_at(const Node& node, const Error& e) {
  throw Error(e.code(), "node (" + std::to_string(node.k) + "," + std::to_string(node.l) + "): " + e.what());
}

NodalEntry solve_entry(const FrequencySet& freq, const Node& node, const std::vector<double>& grid,
                       std::size_t order) {
  NodalEntry entry;
  entry.node = node;
  entry.base = node.t;
  try {
    const auto spec_l = make_inverse_spec<long double>(freq, node);
    const auto spec_d = make_inverse_spec<double>(freq, node);
    entry.spec = spec_d;
    const auto series = lagrange_coefficients(spec_l, std::max<std::size_t>(order, 1));
    entry.series.c.reserve(series.c.size());
    for (auto v : series.c) entry.series.c.push_back(static_cast<double>(v));
    const auto br = monotone_branch(spec_l);
    entry.radius = static_cast<double>(br.radius());
    entry.samples.reserve(grid.size());
    for (double eps : grid) {
      if (eps == 0.0) {
        entry.samples.emplace_back(eps, node.t);
        continue;
      }
      const long double v = solve_node(spec_l, static_cast<long double>(eps), br);
      const double resid = static_cast<double>(std::fabs(f_eval(spec_l, v) - eps));
      if (resid >= 1e-12) fail("NoConvergence", "residual " + std::to_string(resid) + " above 1e-12");
      entry.samples.emplace_back(eps, node_parameter(spec_d, v));
    }
  } catch (const Error& e) {
    rethrow_at(node, e);
  }
  return entry;
}

void check_grid(const NodalCurve& curve, const std::vector<double>& grid) {
  for (double eps : grid)
    if (std::fabs(eps) > curve.eps0)
      fail("RadiusExceeded", "eps = " + std::to_string(eps) + " exceeds the validated radius " +
                                 std::to_string(curve.eps0));
}

}  // namespace

double deformation_radius(const FrequencySet& freq) {
  check_deformable(freq);
  const NodeTable table = enumerate_nodes(freq);
  double eps0 = std::numeric_limits<double>::infinity();
  for (const Node& node : table.nodes) {
    try {
      const auto br = monotone_branch(make_inverse_spec<long double>(freq, node));
      eps0 = std::min(eps0, static_cast<double>(br.radius()));
    } catch (const Error& e) {
      rethrow_at(node, e);
    }
  }
  return eps0;
}

NodalCurve nodal_curve_serial(const FrequencySet& freq, const std::vector<double>& eps_grid, std::size_t order) {
  check_deformable(freq);
  NodalCurve curve;
  curve.freq = freq;
  const NodeTable table = enumerate_nodes(freq);
  curve.entries.reserve(table.nodes.size());
  for (const Node& node : table.nodes) curve.entries.push_back(solve_entry(freq, node, {}, order));
  curve.eps0 = std::numeric_limits<double>::infinity();
  for (const auto& e : curve.entries) curve.eps0 = std::min(curve.eps0, e.radius);
  check_grid(curve, eps_grid);
  for (std::size_t i = 0; i < table.nodes.size(); ++i)
    curve.entries[i] = solve_entry(freq, table.nodes[i], eps_grid, order);
  return curve;
}

NodalCurve nodal_curve(const FrequencySet& freq, const std::vector<double>& eps_grid, std::size_t order) {
  check_deformable(freq);
  NodalCurve curve;
  curve.freq = freq;
  const NodeTable table = enumerate_nodes(freq);
  const long n = static_cast<long>(table.nodes.size());
  curve.entries.resize(table.nodes.size());
  std::vector<std::exception_ptr> errors(table.nodes.size());

  // Radii first: the grid must be validated against the global eps0.
  std::vector<double> radii(table.nodes.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      radii[i] = static_cast<double>(monotone_branch(make_inverse_spec<long double>(freq, table.nodes[i])).radius());
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (long i = 0; i < n; ++i)
    if (errors[i]) {
      try {
        std::rethrow_exception(errors[i]);
      } catch (const Error& e) {
        rethrow_at(table.nodes[i], e);
      }
    }
  curve.eps0 = n ? *std::min_element(radii.begin(), radii.end()) : std::numeric_limits<double>::infinity();
  check_grid(curve, eps_grid);

#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      curve.entries[i] = solve_entry(freq, table.nodes[i], eps_grid, order);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (long i = 0; i < n; ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);
  return curve;
}

NodeTable deformed_nodes(const FrequencySet& freq, double eps) {
  NodeTable table = enumerate_nodes(freq);
  if (eps == 0.0) return table;
  const NodalCurve curve = nodal_curve(freq, {eps}, 3);
  table.freq.eps = eps;
  for (std::size_t i = 0; i < table.nodes.size(); ++i) {
    Node& node = table.nodes[i];
    node.t = curve.entries[i].samples[0].second;
    node.s = companion_parameter(freq.n1, node, node.t);
    node.point = evaluate_shadow(table.freq, node.t);
  }
  return table;
}

}  // namespace knotforge
