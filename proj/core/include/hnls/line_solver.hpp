#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hnls/field.hpp"
#include "hnls/functionals.hpp"
#include "hnls/nonlinearity.hpp"
#include "hnls/picard.hpp"
#include "hnls/stepper.hpp"
#include "hnls/torus_solver.hpp"

namespace hnls {

/// Decaying part v of the hybrid solution, on the truncated line.
struct LineState {
  double t = 0.0;
  ComplexField v;
};

/// u = v + w at a common time, with w kept both on its torus grid and
/// resampled onto the line grid.
struct HybridState {
  double t = 0.0;
  LineState v;
  TorusState w;
  ComplexField w_line;
  ComplexField u;

  /// Resamples w onto v's grid and forms u. Throws GridMismatch if the grids
  /// are not commensurate.
  static HybridState make(double t, ComplexField v, ComplexField w_torus);
};

/// One Strang step for i v_t + v_xx = |v+w|^(p-1)(v+w) - |w|^(p-1) w:
/// S(dt/2), then v' = -i G(v, 0, w_half) over dt by classical RK4 with w
/// frozen at the midpoint, then S(dt/2). Throws StepRejected on non-finite
/// output.
HybridState strang_step_line(const HybridState& state, const ComplexField& w_half_line,
                             const TorusState& w_next, const StepperConfig& cfg, const Power& p);

/// Everything an observer may want at a sample time of a coupled run.
struct CoupledSample {
  std::size_t step;
  const HybridState& state;
  /// w_t from the torus equation, resampled to the line.
  const ComplexField& w_t_line;
};

using CoupledObserver = std::function<void(const CoupledSample&)>;

/// Co-evolves w (Strang steps of dt/2 on the torus) and v (Strang steps of
/// dt on the line) from t = 0 to t_end, calling the observer at t = 0 and
/// after every step.
HybridState evolve_coupled(const ComplexField& v0, const ComplexField& w0, double t_end,
                           const StepperConfig& cfg, const Power& p,
                           const CoupledObserver& observer = {});

/// Ledger row at one sample of a coupled run.
LedgerRow measure(const HybridState& state, const ComplexField& w_t_line, const Power& p,
                  double sobolev_s);

/// c_cal * min(||v0||^(1-p), ||w0||^(1-p), ||w0||^(-(p^2-1)/2)) in H^1 norms;
/// +infinity if both fields vanish.
double guaranteed_time_line(const ComplexField& v0, const ComplexField& w0, const Power& p,
                            double c_cal = 0.01);

/// Duhamel fixed-point iteration for v on [0, horizon]. w_samples must
/// contain the torus solution at every quadrature node time.
PicardSamples picard_solve_line(const ComplexField& v0, std::span<const TorusState> w_samples,
                                double horizon, const StepperConfig& cfg, const Power& p,
                                double c_cal = 0.01);

struct BlowUpConfig {
  /// Absolute ceiling on ||v||_{H^1}.
  double ceiling = 1e6;
  /// Growth factor that triggers a flag when reached within one time unit.
  double growth_factor = 10.0;
  /// Guaranteed-time unit the growth is measured over.
  double time_unit = 1.0;
  /// Norms below this are treated as zero and never seed a growth flag.
  double floor = 1e-8;
};

struct BlowUpReport {
  bool flagged = false;
  double flag_time = 0.0;
  std::string reason;
  std::string note;
};

/// Scans an H^1 history of v. For the defocusing flow v is global, so a
/// flag points at a numerical failure, and the note says so.
BlowUpReport blow_up_monitor(std::span<const double> times, std::span<const double> h1_v,
                             const BlowUpConfig& cfg = {});

/// Fraction of the mass of v sitting in the outer `fraction` of the domain
/// at each end. 0 < fraction < 0.5.
double boundary_mass_monitor(const ComplexField& v, double fraction);

inline constexpr double kBoundaryMassLimit = 1e-6;

/// Interaction picture psi(t) = S(-t) v(t).
ComplexField twist(const ComplexField& v, double t);

}  // namespace hnls
