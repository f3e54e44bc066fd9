#include "hnls/torus_solver.hpp"

#include <cmath>
#include <string>

#include "hnls/errors.hpp"
#include "hnls/functionals.hpp"
#include "hnls/spectral.hpp"

namespace hnls {
namespace {

const TorusGrid& torus_grid_of(const ComplexField& w) {
  if (!is_torus(w.grid())) throw GridMismatch("expected a torus field");
  return std::get<TorusGrid>(w.grid());
}

ComplexField phase_rotation(const ComplexField& w, double p, double dt) {
  std::vector<Complex> out(w.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = w[j] * std::polar(1.0, -modulus_power(w[j], p - 1.0) * dt);
  }
  return ComplexField(w.grid(), std::move(out));
}

TorusRecord make_record(double t, const ComplexField& w, const Power& p, double s) {
  return TorusRecord{t, mass(w), energy(w, p), sobolev_norm(w, 1.0), sobolev_norm(w, s)};
}

}  // namespace

TorusState strang_step_torus(const TorusState& state, const StepperConfig& cfg, const Power& p) {
  torus_grid_of(state.w);
  if (cfg.dt == 0.0 || !std::isfinite(cfg.dt)) throw InvalidParameter("dt must be finite and nonzero");
  auto w = free_propagate(state.w, 0.5 * cfg.dt);
  w = phase_rotation(w, p.value(), cfg.dt);
  if (cfg.dealias) w = dealias(w);
  w = free_propagate(w, 0.5 * cfg.dt);
  return TorusState{state.t + cfg.dt, std::move(w)};
}

ComplexField torus_time_derivative(const ComplexField& w, const Power& p) {
  torus_grid_of(w);
  const auto wxx = derivative(w, 2);
  const double pv = p.value();
  std::vector<Complex> out(w.size());
  const Complex i(0.0, 1.0);
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = i * wxx[j] - i * power_nonlinearity(w[j], pv);
  }
  return ComplexField(w.grid(), std::move(out));
}

std::size_t step_count(double t_end, double dt) {
  if (!(dt > 0.0)) throw InvalidParameter("dt must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw InvalidParameter("t_end must be >= 0");
  const double ratio = t_end / dt;
  const double steps = std::round(ratio);
  if (std::abs(steps - ratio) > 1e-9 * std::max(1.0, ratio)) {
    throw InvalidParameter("t_end is not an integer multiple of dt");
  }
  return static_cast<std::size_t>(steps);
}

TorusTrajectory evolve_torus(const ComplexField& w0, double t_end, const StepperConfig& cfg,
                             const Power& p, double sobolev_s) {
  torus_grid_of(w0);
  validate(cfg);
  const auto steps = step_count(t_end, cfg.dt);
  StepperConfig half = cfg;
  half.dt = 0.5 * cfg.dt;

  TorusTrajectory traj;
  traj.dt = cfg.dt;
  traj.states.reserve(2 * steps + 1);
  traj.records.reserve(steps + 1);
  traj.states.push_back(TorusState{0.0, w0});
  traj.records.push_back(make_record(0.0, w0, p, sobolev_s));
  for (std::size_t i = 0; i < steps; ++i) {
    const double t_next = static_cast<double>(i + 1) * cfg.dt;
    auto mid = strang_step_torus(traj.states.back(), half, p);
    auto end = strang_step_torus(mid, half, p);
    end.t = t_next;
    traj.records.push_back(make_record(t_next, end.w, p, sobolev_s));
    traj.states.push_back(std::move(mid));
    traj.states.push_back(std::move(end));
  }
  return traj;
}

double guaranteed_time_torus(const ComplexField& w0, const Power& p, double c_cal) {
  if (!(c_cal > 0.0)) throw InvalidParameter("calibration constant must be > 0");
  const double norm = sobolev_norm(w0, 1.0);
  if (norm == 0.0) return kInfinity;
  return c_cal * std::pow(norm, 1.0 - p.value());
}

PicardSamples picard_solve_torus(const ComplexField& w0, double horizon, const StepperConfig& cfg,
                                 const Power& p, double c_cal) {
  torus_grid_of(w0);
  const double guaranteed = guaranteed_time_torus(w0, p, c_cal);
  const double pv = p.value();
  auto result = detail::picard_iterate(
      w0, horizon, cfg, [pv](std::size_t, const ComplexField& w) {
        std::vector<Complex> out(w.size());
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = power_nonlinearity(w[j], pv);
        return ComplexField(w.grid(), std::move(out));
      });
  result.diagnostics.guaranteed_time = guaranteed;
  result.diagnostics.beyond_guaranteed_time = horizon > guaranteed;
  return result;
}

}  // namespace hnls
