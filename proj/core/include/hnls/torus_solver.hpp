#pragma once

#include <vector>

#include "hnls/field.hpp"
#include "hnls/nonlinearity.hpp"
#include "hnls/picard.hpp"
#include "hnls/stepper.hpp"

namespace hnls {

/// Periodic solution w of i w_t + w_xx = |w|^(p-1) w at time t.
struct TorusState {
  double t = 0.0;
  ComplexField w;
};

/// One Strang step S(dt/2) N(dt) S(dt/2). The nonlinear flow is solved
/// exactly: w -> w exp(-i |w|^(p-1) dt), since |w| is invariant under it.
/// A negative dt steps backwards.
TorusState strang_step_torus(const TorusState& state, const StepperConfig& cfg, const Power& p);

/// w_t = i w_xx - i |w|^(p-1) w, computed spectrally.
ComplexField torus_time_derivative(const ComplexField& w, const Power& p);

/// Per-step record of an evolve_torus run.
struct TorusRecord {
  double t = 0.0;
  double mass = 0.0;    ///< M(w) = ||w||^2 / 2
  double energy = 0.0;  ///< E(w)
  double h1 = 0.0;
  double hs = 0.0;
};

struct TorusTrajectory {
  double dt = 0.0;
  /// Samples at every half step: states[2i] is t_i = i dt, states[2i+1] is t_i + dt/2.
  std::vector<TorusState> states;
  /// One record per full step.
  std::vector<TorusRecord> records;

  std::size_t steps() const noexcept { return records.empty() ? 0 : records.size() - 1; }
  const TorusState& at_step(std::size_t i) const { return states.at(2 * i); }
  const TorusState& at_half_step(std::size_t i) const { return states.at(2 * i + 1); }
};

/// Number of steps of size dt covering [0, t_end]; t_end must be a multiple
/// of dt to within one part in 1e9.
std::size_t step_count(double t_end, double dt);

/// Advances with Strang steps of size dt/2 so that w is available at every
/// half step of the dt grid, recording M, E, H^1 and H^s at each full step.
TorusTrajectory evolve_torus(const ComplexField& w0, double t_end, const StepperConfig& cfg,
                             const Power& p, double sobolev_s = 1.0);

/// c_cal * ||w0||_{H^1}^(1-p); +infinity for zero data.
double guaranteed_time_torus(const ComplexField& w0, const Power& p, double c_cal = 0.01);

/// Duhamel fixed-point iteration on [0, horizon] with composite trapezoid
/// quadrature on cfg.picard_quad_nodes nodes, starting from S(t) w0.
PicardSamples picard_solve_torus(const ComplexField& w0, double horizon, const StepperConfig& cfg,
                                 const Power& p, double c_cal = 0.01);

}  // namespace hnls
