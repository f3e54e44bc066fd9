#pragma once

#include <functional>
#include <vector>

#include "hnls/field.hpp"
#include "hnls/stepper.hpp"

namespace hnls {

/// Outcome of a fixed-point iteration on the Duhamel formula
///   f(t) = S(t) f0 - i int_0^t S(t-s) N(s, f(s)) ds
/// sampled at equispaced quadrature nodes.
struct PicardDiagnostics {
  int iterations = 0;
  bool converged = false;
  /// sup over nodes of the H^1 distance between successive iterates
  std::vector<double> distances;
  /// distances[m+1] / distances[m]
  std::vector<double> contraction_ratios;
  /// Richardson estimate of the trapezoid error, sup over even nodes, L^2
  double quadrature_error = 0.0;
  double guaranteed_time = 0.0;
  bool beyond_guaranteed_time = false;
};

struct PicardSamples {
  std::vector<double> times;
  std::vector<ComplexField> fields;
  PicardDiagnostics diagnostics;
};

namespace detail {

/// Nonlinearity evaluated at node index j on the physical samples of the
/// current iterate. Must return a field on the same grid.
using NodeNonlinearity = std::function<ComplexField(std::size_t node, const ComplexField&)>;

/// Runs the iteration with composite trapezoid quadrature. Throws
/// NonConvergence if picard_tol is not reached within picard_max_iter.
PicardSamples picard_iterate(const ComplexField& initial, double horizon,
                             const StepperConfig& cfg, const NodeNonlinearity& nonlinearity);

std::vector<double> picard_nodes(double horizon, int count);

}  // namespace detail

}  // namespace hnls
