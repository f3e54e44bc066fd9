#include "hnls/field.hpp"

#include <cmath>
#include <string>

#include "hnls/errors.hpp"

namespace hnls {

bool all_finite(std::span<const Complex> values) noexcept {
  for (const auto& z : values) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

void require_finite(std::span<const Complex> values) {
  for (std::size_t j = 0; j < values.size(); ++j) {
    const auto& z = values[j];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidField("non-finite sample at index " + std::to_string(j));
    }
  }
}

ComplexField::ComplexField(Grid grid, std::vector<Complex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_size(grid_)) {
    throw InvalidField("field has " + std::to_string(values_.size()) +
                       " samples but grid has " + std::to_string(grid_size(grid_)));
  }
  require_finite(values_);
}

ComplexField ComplexField::zeros(const Grid& grid) {
  return ComplexField(grid, std::vector<Complex>(grid_size(grid)));
}

ComplexField ComplexField::constant(const Grid& grid, Complex value) {
  return ComplexField(grid, std::vector<Complex>(grid_size(grid), value));
}

ComplexField ComplexField::sample(const Grid& grid, const std::function<Complex(double)>& f) {
  std::vector<Complex> values(grid_size(grid));
  for (std::size_t j = 0; j < values.size(); ++j) values[j] = f(grid_point(grid, j));
  return ComplexField(grid, std::move(values));
}

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw GridMismatch("fields live on different grids");
}

void require_same_grid(const ComplexField& a, const ComplexField& b) {
  require_same_grid(a.grid(), b.grid());
}

ComplexField& ComplexField::operator+=(const ComplexField& other) {
  require_same_grid(*this, other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
  return *this;
}

ComplexField& ComplexField::operator-=(const ComplexField& other) {
  require_same_grid(*this, other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
  return *this;
}

ComplexField& ComplexField::operator*=(Complex scale) {
  if (!std::isfinite(scale.real()) || !std::isfinite(scale.imag())) {
    throw InvalidField("non-finite scale factor");
  }
  for (auto& z : values_) z *= scale;
  return *this;
}

ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }
ComplexField operator-(ComplexField a, const ComplexField& b) { return a -= b; }
ComplexField operator*(Complex scale, ComplexField a) { return a *= scale; }

std::vector<double> Spectrum::frequencies() const {
  return std::visit([](const auto& g) { return g.frequencies(); }, grid);
}

}  // namespace hnls
