#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "hnls/field.hpp"
#include "hnls/grid.hpp"

namespace hnls::testing {

inline constexpr double kPi = std::numbers::pi;

/// Smooth random trigonometric polynomial with modes |m| <= max_mode on the
/// torus; on a line grid the same sum is multiplied by a Gaussian window.
inline ComplexField random_field(const Grid& grid, std::uint32_t seed, int max_mode = 6,
                                 double scale = 1.0) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<std::pair<int, Complex>> modes;
  for (int m = -max_mode; m <= max_mode; ++m) {
    const double decay = 1.0 / (1.0 + m * m);
    modes.emplace_back(m, scale * decay * Complex(normal(rng), normal(rng)));
  }
  const bool torus = is_torus(grid);
  return ComplexField::sample(grid, [&](double x) {
    Complex z;
    for (const auto& [m, c] : modes) z += c * std::polar(1.0, m * x);
    return torus ? z : z * std::exp(-x * x / 8.0);
  });
}

/// Direct O(n^2) evaluation of c_k = (1/n) sum_j f_j e^{-ik x_j} on the torus.
inline Complex naive_torus_coefficient(const ComplexField& f, int k) {
  const auto& g = std::get<TorusGrid>(f.grid());
  Complex sum;
  for (std::size_t j = 0; j < g.n(); ++j) sum += f[j] * std::polar(1.0, -k * g.x(j));
  return sum / static_cast<double>(g.n());
}

/// Rectangle-rule quadrature of g(f_j) over the grid.
template <typename Fn>
double quadrature(const ComplexField& f, Fn&& g) {
  double sum = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) sum += g(f[j]);
  return sum * grid_dx(f.grid());
}

inline double l2_distance(const ComplexField& a, const ComplexField& b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += std::norm(a[j] - b[j]);
  return std::sqrt(sum * grid_dx(a.grid()));
}

inline double l2(const ComplexField& a) {
  return std::sqrt(quadrature(a, [](Complex z) { return std::norm(z); }));
}

}  // namespace hnls::testing
