#include "hnls/scenarios.hpp"

#include <cmath>

#include "hnls/checkpoint.hpp"
#include "hnls/errors.hpp"
#include "hnls/estimates.hpp"
#include "hnls/line_solver.hpp"
#include "hnls/spectral.hpp"

namespace hnls {
namespace {

ComplexField carrier(const RunConfig& cfg, const TorusGrid& grid) {
  const auto& sp = cfg.params;
  auto w = ComplexField::sample(grid, [&](double x) {
    Complex z = sp.amplitude * std::polar(1.0, sp.wavenumber * x);
    if (sp.amplitude2 != 0.0) z += sp.amplitude2 * std::polar(1.0, sp.wavenumber2 * x);
    return z;
  });
  if (sp.carrier_noise > 0.0) {
    FieldSampler noise(cfg.seed, grid, sp.noise_decay, sp.carrier_noise);
    w += noise.draw(0, 0);
  }
  return w;
}

ComplexField load_on(const std::string& path, const Grid& expected, const char* what) {
  Checkpoint cp = [&] {
    try {
      return load_checkpoint(path);
    } catch (const Error& e) {
      throw InvalidScenario(std::string(what) + ": " + e.what());
    }
  }();
  if (cp.field.grid() != expected) {
    throw InvalidScenario(std::string(what) + " checkpoint grid does not match the config");
  }
  return cp.field;
}

}  // namespace

double smooth_step(double t) noexcept {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double plateau_bump(double x, double center, double plateau, double ramp) noexcept {
  const double left = center - 0.5 * plateau;
  const double right = center + 0.5 * plateau;
  return smooth_step((x - left + ramp) / ramp) * smooth_step((right + ramp - x) / ramp);
}

ComplexField plane_wave_exact(const TorusGrid& grid, double amplitude, int k, double p, double t) {
  const double omega = static_cast<double>(k) * k + std::pow(std::abs(amplitude), p - 1.0);
  return ComplexField::sample(
      grid, [&](double x) { return amplitude * std::polar(1.0, k * x - omega * t); });
}

InitialData build_initial_data(const RunConfig& cfg) {
  const TorusGrid torus(cfg.torus_n);
  const LineGrid line(cfg.line_n, cfg.line_k);
  const auto& sp = cfg.params;

  InitialData data{ComplexField::zeros(line), ComplexField::zeros(torus)};
  switch (cfg.scenario) {
    case Scenario::PlaneWave:
      data.w0 = carrier(cfg, torus);
      break;
    case Scenario::Constant:
      data.w0 = ComplexField::constant(torus, sp.amplitude);
      break;
    case Scenario::DroppedBit: {
      data.w0 = carrier(cfg, torus);
      const auto w_line = resample_torus_to_line(data.w0, line);
      std::vector<Complex> v(line.n());
      for (std::size_t j = 0; j < line.n(); ++j) {
        v[j] = -w_line[j] * plateau_bump(line.x(j), sp.center, sp.plateau_width, sp.ramp);
      }
      data.v0 = ComplexField(line, std::move(v));
      break;
    }
    case Scenario::GaussianOnCarrier:
      data.w0 = carrier(cfg, torus);
      data.v0 = ComplexField::sample(line, [&](double x) {
        return Complex(sp.bump_amplitude * std::exp(-0.5 * x * x / (sp.sigma * sp.sigma)));
      });
      break;
    case Scenario::CustomCheckpoint:
      data.v0 = load_on(sp.checkpoint_v, line, "checkpoint_v");
      data.w0 = load_on(sp.checkpoint_w, torus, "checkpoint_w");
      break;
  }

  const double edge = boundary_mass_monitor(data.v0, cfg.tol.boundary_fraction);
  if (edge > cfg.tol.boundary_mass) {
    throw InvalidScenario("initial v0 already has boundary mass fraction " + std::to_string(edge));
  }
  return data;
}

}  // namespace hnls
