#pragma once

#include <cstddef>
#include <numbers>
#include <variant>
#include <vector>

namespace hnls {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Uniform collocation grid on the circle R/2piZ, x_j = 2 pi j / n.
class TorusGrid {
 public:
  /// n must be a power of two and at least 16.
  explicit TorusGrid(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  double period() const noexcept { return kTwoPi; }
  double dx() const noexcept { return kTwoPi / static_cast<double>(n_); }
  double x(std::size_t j) const noexcept { return dx() * static_cast<double>(j); }

  /// Integer wavenumber stored at FFT slot j (0, 1, ..., n/2-1, -n/2, ..., -1).
  double wavenumber(std::size_t slot) const noexcept;
  /// Wavenumbers in ascending order, -n/2 ... n/2-1.
  std::vector<double> frequencies() const;

  friend bool operator==(const TorusGrid&, const TorusGrid&) = default;

 private:
  std::size_t n_;
};

/// Periodic truncation of the real line to [-L, L) with L = pi * K.
class LineGrid {
 public:
  /// n must be a power of two (>= 16) and K >= 2.
  LineGrid(std::size_t n, int periods_k);

  std::size_t n() const noexcept { return n_; }
  int periods_k() const noexcept { return k_; }
  double half_length() const noexcept { return std::numbers::pi * k_; }
  double dx() const noexcept { return 2.0 * half_length() / static_cast<double>(n_); }
  double dxi() const noexcept { return std::numbers::pi / half_length(); }
  double x(std::size_t j) const noexcept { return -half_length() + dx() * static_cast<double>(j); }

  /// Angular frequency pi*m/L stored at FFT slot j.
  double wavenumber(std::size_t slot) const noexcept;
  std::vector<double> frequencies() const;

  friend bool operator==(const LineGrid&, const LineGrid&) = default;

 private:
  std::size_t n_;
  int k_;
};

using Grid = std::variant<TorusGrid, LineGrid>;

std::size_t grid_size(const Grid& grid) noexcept;
bool is_torus(const Grid& grid) noexcept;
double grid_dx(const Grid& grid) noexcept;
double grid_point(const Grid& grid, std::size_t j) noexcept;
double grid_wavenumber(const Grid& grid, std::size_t slot) noexcept;

/// Throws GridMismatch unless n_line / (2K) >= n_torus, i.e. the line grid
/// resolves every torus mode with a factor two to spare.
void require_commensurate(const TorusGrid& torus, const LineGrid& line);

bool is_power_of_two(std::size_t n) noexcept;

}  // namespace hnls
