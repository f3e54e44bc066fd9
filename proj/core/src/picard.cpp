#include "hnls/picard.hpp"

#include <cmath>
#include <sstream>

#include "hnls/errors.hpp"
#include "hnls/spectral.hpp"

namespace hnls {

void validate(const StepperConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw InvalidParameter("dt must be > 0");
  if (!(cfg.picard_tol > 0.0)) throw InvalidParameter("picard_tol must be > 0");
  if (cfg.picard_max_iter < 1) throw InvalidParameter("picard_max_iter must be >= 1");
  if (cfg.picard_quad_nodes < 2) throw InvalidParameter("picard_quad_nodes must be >= 2");
}

namespace detail {

std::vector<double> picard_nodes(double horizon, int count) {
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) t[static_cast<std::size_t>(j)] = horizon * j / (count - 1);
  t.back() = horizon;
  return t;
}

namespace {

// Iterates live in the interaction picture: psi(t) = S(-t) f(t), stored as
// natural-order continuum coefficients.
using Coeffs = std::vector<Complex>;

double weighted_norm(const Grid& grid, const Coeffs& c, double s) {
  double sum = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double k = grid_wavenumber(grid, j);
    sum += (s == 0.0 ? 1.0 : std::pow(1.0 + k * k, s)) * std::norm(c[j]);
  }
  return std::sqrt(sum * parseval_weight(grid));
}

Coeffs phase(const Grid& grid, Coeffs c, double t) {
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double k = grid_wavenumber(grid, j);
    c[j] *= std::polar(1.0, -t * k * k);
  }
  return c;
}

}  // namespace

PicardSamples picard_iterate(const ComplexField& initial, double horizon,
                             const StepperConfig& cfg, const NodeNonlinearity& nonlinearity) {
  validate(cfg);
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw InvalidParameter("Picard horizon must be > 0");
  }
  const Grid& grid = initial.grid();
  const auto times = picard_nodes(horizon, cfg.picard_quad_nodes);
  const auto nodes = times.size();
  const double h = horizon / static_cast<double>(nodes - 1);
  const Coeffs c0 = natural_coeffs(initial);

  // Free evolution as the starting iterate: psi == c0 at every node.
  std::vector<Coeffs> psi(nodes, c0);
  std::vector<Coeffs> integrand(nodes);

  PicardSamples out;
  auto& diag = out.diagnostics;

  auto evaluate_integrand = [&](const std::vector<Coeffs>& current) {
    for (std::size_t j = 0; j < nodes; ++j) {
      ComplexField f(grid, natural_to_values(grid, phase(grid, current[j], times[j])));
      ComplexField nl = nonlinearity(j, f);
      require_same_grid(nl.grid(), grid);
      integrand[j] = phase(grid, natural_coeffs(nl), -times[j]);
    }
  };

  for (int iter = 1; iter <= cfg.picard_max_iter; ++iter) {
    evaluate_integrand(psi);
    std::vector<Coeffs> next(nodes, c0);
    Coeffs running(c0.size());
    for (std::size_t j = 1; j < nodes; ++j) {
      for (std::size_t m = 0; m < running.size(); ++m) {
        running[m] += 0.5 * h * (integrand[j - 1][m] + integrand[j][m]);
      }
      for (std::size_t m = 0; m < running.size(); ++m) {
        next[j][m] = c0[m] - Complex(0.0, 1.0) * running[m];
      }
    }
    double distance = 0.0;
    for (std::size_t j = 0; j < nodes; ++j) {
      Coeffs diff(next[j].size());
      for (std::size_t m = 0; m < diff.size(); ++m) diff[m] = next[j][m] - psi[j][m];
      distance = std::max(distance, weighted_norm(grid, diff, 1.0));
    }
    if (!std::isfinite(distance)) throw NonConvergence("Picard iterate became non-finite");
    if (!diag.distances.empty()) {
      const double prev = diag.distances.back();
      diag.contraction_ratios.push_back(prev > 0.0 ? distance / prev : 0.0);
    }
    diag.distances.push_back(distance);
    psi = std::move(next);
    diag.iterations = iter;
    if (distance < cfg.picard_tol) {
      diag.converged = true;
      break;
    }
  }
  if (!diag.converged) {
    std::ostringstream msg;
    msg << "Picard iteration did not reach tol " << cfg.picard_tol << " in "
        << cfg.picard_max_iter << " iterations (last distance " << diag.distances.back() << ")";
    throw NonConvergence(msg.str());
  }

  // Trapezoid on h versus 2h at even nodes of the converged iterate.
  evaluate_integrand(psi);
  if (nodes >= 3) {
    Coeffs fine(c0.size()), coarse(c0.size());
    for (std::size_t j = 2; j < nodes; j += 2) {
      Coeffs diff(c0.size());
      for (std::size_t m = 0; m < c0.size(); ++m) {
        fine[m] += 0.5 * h * (integrand[j - 2][m] + 2.0 * integrand[j - 1][m] + integrand[j][m]);
        coarse[m] += h * (integrand[j - 2][m] + integrand[j][m]);
        diff[m] = (fine[m] - coarse[m]) / 3.0;
      }
      diag.quadrature_error = std::max(diag.quadrature_error, weighted_norm(grid, diff, 0.0));
    }
  }

  out.times = times;
  out.fields.reserve(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    out.fields.emplace_back(grid, natural_to_values(grid, phase(grid, psi[j], times[j])));
  }
  return out;
}

}  // namespace detail
}  // namespace hnls
