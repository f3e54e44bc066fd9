#include "hnls/grid.hpp"

#include <string>

#include "hnls/errors.hpp"

namespace hnls {

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

namespace {

double signed_index(std::size_t slot, std::size_t n) noexcept {
  const auto half = n / 2;
  return slot < half ? static_cast<double>(slot)
                     : static_cast<double>(slot) - static_cast<double>(n);
}

}  // namespace

TorusGrid::TorusGrid(std::size_t n) : n_(n) {
  if (!is_power_of_two(n) || n < 16) {
    throw InvalidParameter("torus grid size must be a power of two >= 16, got " +
                           std::to_string(n));
  }
}

double TorusGrid::wavenumber(std::size_t slot) const noexcept { return signed_index(slot, n_); }

std::vector<double> TorusGrid::frequencies() const {
  std::vector<double> out(n_);
  const auto half = static_cast<double>(n_ / 2);
  for (std::size_t j = 0; j < n_; ++j) out[j] = static_cast<double>(j) - half;
  return out;
}

LineGrid::LineGrid(std::size_t n, int periods_k) : n_(n), k_(periods_k) {
  if (!is_power_of_two(n) || n < 16) {
    throw InvalidParameter("line grid size must be a power of two >= 16, got " +
                           std::to_string(n));
  }
  if (periods_k < 2) {
    throw InvalidParameter("line half length must be pi*K with K >= 2, got K=" +
                           std::to_string(periods_k));
  }
}

double LineGrid::wavenumber(std::size_t slot) const noexcept {
  return signed_index(slot, n_) * dxi();
}

std::vector<double> LineGrid::frequencies() const {
  std::vector<double> out(n_);
  const auto half = static_cast<double>(n_ / 2);
  for (std::size_t j = 0; j < n_; ++j) out[j] = (static_cast<double>(j) - half) * dxi();
  return out;
}

std::size_t grid_size(const Grid& grid) noexcept {
  return std::visit([](const auto& g) { return g.n(); }, grid);
}

bool is_torus(const Grid& grid) noexcept { return std::holds_alternative<TorusGrid>(grid); }

double grid_dx(const Grid& grid) noexcept {
  return std::visit([](const auto& g) { return g.dx(); }, grid);
}

double grid_point(const Grid& grid, std::size_t j) noexcept {
  return std::visit([j](const auto& g) { return g.x(j); }, grid);
}

double grid_wavenumber(const Grid& grid, std::size_t slot) noexcept {
  return std::visit([slot](const auto& g) { return g.wavenumber(slot); }, grid);
}

void require_commensurate(const TorusGrid& torus, const LineGrid& line) {
  const auto k = static_cast<std::size_t>(line.periods_k());
  if (line.n() < 2 * k * torus.n()) {
    throw GridMismatch("line grid (n=" + std::to_string(line.n()) + ", K=" +
                       std::to_string(line.periods_k()) +
                       ") does not resolve torus grid n=" + std::to_string(torus.n()));
  }
}

}  // namespace hnls
