#pragma once

namespace hnls {

struct StepperConfig {
  double dt = 1e-3;
  /// 2/3-rule filter after each nonlinear substep (torus only).
  bool dealias = false;
  int picard_max_iter = 30;
  double picard_tol = 1e-10;
  int picard_quad_nodes = 65;
};

/// Throws InvalidParameter unless dt > 0, picard_tol > 0, max_iter >= 1 and
/// at least two quadrature nodes.
void validate(const StepperConfig& cfg);

}  // namespace hnls
