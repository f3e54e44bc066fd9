#include "hnls/line_solver.hpp"

#include <cmath>
#include <sstream>

#include "hnls/errors.hpp"
#include "hnls/spectral.hpp"

namespace hnls {
namespace {

const LineGrid& line_grid_of(const ComplexField& v) {
  if (is_torus(v.grid())) throw GridMismatch("expected a line field");
  return std::get<LineGrid>(v.grid());
}

using Samples = std::vector<Complex>;

// k = -i G(v, 0, w)
void rhs(const Samples& v, std::span<const Complex> w, double p, Samples& out) {
  const Complex minus_i(0.0, -1.0);
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = minus_i * perturbed_nonlinearity(v[j], w[j], p);
}

Samples rk4_frozen(Samples v, std::span<const Complex> w, double p, double dt) {
  const auto n = v.size();
  Samples k1(n), k2(n), k3(n), k4(n), stage(n);
  rhs(v, w, p, k1);
  for (std::size_t j = 0; j < n; ++j) stage[j] = v[j] + 0.5 * dt * k1[j];
  rhs(stage, w, p, k2);
  for (std::size_t j = 0; j < n; ++j) stage[j] = v[j] + 0.5 * dt * k2[j];
  rhs(stage, w, p, k3);
  for (std::size_t j = 0; j < n; ++j) stage[j] = v[j] + dt * k3[j];
  rhs(stage, w, p, k4);
  for (std::size_t j = 0; j < n; ++j) {
    v[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
  return v;
}

}  // namespace

HybridState HybridState::make(double t, ComplexField v, ComplexField w_torus) {
  const auto& line = line_grid_of(v);
  auto w_line = resample_torus_to_line(w_torus, line);
  auto u = v + w_line;
  return HybridState{t, LineState{t, std::move(v)}, TorusState{t, std::move(w_torus)},
                     std::move(w_line), std::move(u)};
}

HybridState strang_step_line(const HybridState& state, const ComplexField& w_half_line,
                             const TorusState& w_next, const StepperConfig& cfg, const Power& p) {
  const auto& line = line_grid_of(state.v.v);
  require_same_grid(state.v.v, w_half_line);
  if (cfg.dt == 0.0 || !std::isfinite(cfg.dt)) throw InvalidParameter("dt must be finite and nonzero");

  auto v = free_propagate(state.v.v, 0.5 * cfg.dt);
  auto samples = rk4_frozen(std::move(v).release(), w_half_line.values(), p.value(), cfg.dt);
  if (!all_finite(samples)) {
    std::ostringstream msg;
    msg << "line step from t=" << state.t << " produced non-finite values";
    throw StepRejected(msg.str());
  }
  auto v_next = free_propagate(ComplexField(line, std::move(samples)), 0.5 * cfg.dt);
  if (!all_finite(v_next.values())) throw StepRejected("non-finite values after linear substep");
  return HybridState::make(state.t + cfg.dt, std::move(v_next), w_next.w);
}

LedgerRow measure(const HybridState& state, const ComplexField& w_t_line, const Power& p,
                  double sobolev_s) {
  LedgerRow row;
  row.t = state.t;
  row.mass_v = mass(state.v.v);
  row.energy_v = energy(state.v.v, p);
  row.energy_w = energy(state.w.w, p);
  row.mass_w = mass(state.w.w);
  row.hamiltonian_h = hamiltonian(state.v.v, state.w_line, p);
  row.remainder_integral = remainder_integral(state.v.v, state.w_line, w_t_line, p);
  row.hybrid_mass = hybrid_mass(state.u, state.w_line);
  row.h1_v = sobolev_norm(state.v.v, 1.0);
  row.hs_w = sobolev_norm(state.w.w, sobolev_s);
  row.h1_w = sobolev_norm(state.w.w, 1.0);
  return row;
}

HybridState evolve_coupled(const ComplexField& v0, const ComplexField& w0, double t_end,
                           const StepperConfig& cfg, const Power& p,
                           const CoupledObserver& observer) {
  validate(cfg);
  const auto& line = line_grid_of(v0);
  const auto steps = step_count(t_end, cfg.dt);
  StepperConfig half = cfg;
  half.dt = 0.5 * cfg.dt;

  auto state = HybridState::make(0.0, v0, w0);
  auto notify = [&](std::size_t step) {
    if (!observer) return;
    const auto wt = resample_torus_to_line(torus_time_derivative(state.w.w, p), line);
    observer(CoupledSample{step, state, wt});
  };
  notify(0);
  for (std::size_t i = 0; i < steps; ++i) {
    const auto mid = strang_step_torus(state.w, half, p);
    auto end = strang_step_torus(mid, half, p);
    end.t = static_cast<double>(i + 1) * cfg.dt;
    const auto w_half_line = resample_torus_to_line(mid.w, line);
    state = strang_step_line(state, w_half_line, end, cfg, p);
    state.t = state.v.t = end.t;
    notify(i + 1);
  }
  return state;
}

double guaranteed_time_line(const ComplexField& v0, const ComplexField& w0, const Power& p,
                            double c_cal) {
  if (!(c_cal > 0.0)) throw InvalidParameter("calibration constant must be > 0");
  const double pv = p.value();
  const double nv = sobolev_norm(v0, 1.0);
  const double nw = sobolev_norm(w0, 1.0);
  double t = kInfinity;
  if (nv > 0.0) t = std::min(t, std::pow(nv, 1.0 - pv));
  if (nw > 0.0) {
    t = std::min(t, std::pow(nw, 1.0 - pv));
    t = std::min(t, std::pow(nw, -0.5 * (pv * pv - 1.0)));
  }
  return std::isinf(t) ? t : c_cal * t;
}

PicardSamples picard_solve_line(const ComplexField& v0, std::span<const TorusState> w_samples,
                                double horizon, const StepperConfig& cfg, const Power& p,
                                double c_cal) {
  const auto& line = line_grid_of(v0);
  validate(cfg);
  if (w_samples.empty()) throw GridMismatch("no torus samples supplied");
  const auto nodes = detail::picard_nodes(horizon, cfg.picard_quad_nodes);
  const double match_tol = 1e-9 * std::max(1.0, horizon);
  std::vector<ComplexField> w_line;
  w_line.reserve(nodes.size());
  for (double t : nodes) {
    const TorusState* found = nullptr;
    for (const auto& s : w_samples) {
      if (std::abs(s.t - t) <= match_tol) {
        found = &s;
        break;
      }
    }
    if (!found) {
      std::ostringstream msg;
      msg << "torus trajectory has no sample at quadrature node t=" << t;
      throw GridMismatch(msg.str());
    }
    w_line.push_back(resample_torus_to_line(found->w, line));
  }

  const double pv = p.value();
  auto result = detail::picard_iterate(
      v0, horizon, cfg, [&](std::size_t node, const ComplexField& v) {
        const auto& w = w_line[node];
        std::vector<Complex> out(v.size());
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = perturbed_nonlinearity(v[j], w[j], pv);
        return ComplexField(v.grid(), std::move(out));
      });
  const double guaranteed = guaranteed_time_line(v0, w_samples.front().w, p, c_cal);
  result.diagnostics.guaranteed_time = guaranteed;
  result.diagnostics.beyond_guaranteed_time = horizon > guaranteed;
  return result;
}

BlowUpReport blow_up_monitor(std::span<const double> times, std::span<const double> h1_v,
                             const BlowUpConfig& cfg) {
  if (times.size() != h1_v.size()) throw InvalidParameter("times and norms differ in length");
  if (times.empty()) throw InvalidParameter("blow-up monitor needs a nonempty trajectory");
  BlowUpReport report;
  report.note =
      "defocusing flow: v stays bounded in H^1 for all time, so any flag signals a "
      "numerical failure rather than a physical singularity";
  auto flag = [&](double t, std::string reason) {
    report.flagged = true;
    report.flag_time = t;
    report.reason = std::move(reason);
  };
  std::size_t window_start = 0;
  for (std::size_t j = 0; j < times.size(); ++j) {
    if (!std::isfinite(h1_v[j])) {
      flag(times[j], "non-finite H^1 norm");
      return report;
    }
    if (h1_v[j] > cfg.ceiling) {
      flag(times[j], "H^1 norm exceeded ceiling");
      return report;
    }
    while (times[j] - times[window_start] > cfg.time_unit) ++window_start;
    for (std::size_t i = window_start; i < j; ++i) {
      if (h1_v[i] > cfg.floor && h1_v[j] > cfg.growth_factor * h1_v[i]) {
        std::ostringstream msg;
        msg << "H^1 norm grew by more than " << cfg.growth_factor << "x within "
            << cfg.time_unit << " time units";
        flag(times[j], msg.str());
        return report;
      }
    }
  }
  return report;
}

double boundary_mass_monitor(const ComplexField& v, double fraction) {
  if (!(fraction > 0.0 && fraction < 0.5)) {
    throw InvalidParameter("boundary fraction must lie in (0, 0.5)");
  }
  if (is_torus(v.grid())) throw Unsupported("boundary monitor applies to line fields only");
  const auto n = v.size();
  const auto edge = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  double total = 0.0, outer = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double m = std::norm(v[j]);
    total += m;
    if (j < edge || j >= n - edge) outer += m;
  }
  return total > 0.0 ? outer / total : 0.0;
}

ComplexField twist(const ComplexField& v, double t) { return free_propagate(v, -t); }

}  // namespace hnls
