#pragma once

#include "hnls/config.hpp"
#include "hnls/field.hpp"
#include "hnls/grid.hpp"

namespace hnls {

struct InitialData {
  /// Decaying part on the line grid.
  ComplexField v0;
  /// Periodic carrier on the torus grid.
  ComplexField w0;
};

/// Builds (v0, w0) for the configured scenario. Throws InvalidScenario if the
/// data is inconsistent with the grids or v0 already fails the boundary monitor.
InitialData build_initial_data(const RunConfig& cfg);

/// C-infinity step: 0 for t <= 0, 1 for t >= 1, built from exp(-1/t).
double smooth_step(double t) noexcept;

/// Equal to 1 on [center - plateau/2, center + plateau/2] and 0 outside the
/// interval widened by `ramp` on both sides.
double plateau_bump(double x, double center, double plateau, double ramp) noexcept;

/// A exp(i(kx - (k^2 + |A|^(p-1)) t)), the exact plane-wave solution.
ComplexField plane_wave_exact(const TorusGrid& grid, double amplitude, int k, double p, double t);

}  // namespace hnls
