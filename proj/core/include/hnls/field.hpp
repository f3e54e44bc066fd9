#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "hnls/grid.hpp"

namespace hnls {

using Complex = std::complex<double>;

/// Physical samples of a complex function on a grid. Every entry is finite;
/// construction from non-finite data throws InvalidField.
class ComplexField {
 public:
  ComplexField(Grid grid, std::vector<Complex> values);

  static ComplexField zeros(const Grid& grid);
  static ComplexField constant(const Grid& grid, Complex value);
  /// Samples f at every collocation point.
  static ComplexField sample(const Grid& grid, const std::function<Complex(double)>& f);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const Complex> values() const noexcept { return values_; }
  const Complex& operator[](std::size_t j) const noexcept { return values_[j]; }

  /// Moves the sample vector out; the field is left empty.
  std::vector<Complex> release() && { return std::move(values_); }

  ComplexField& operator+=(const ComplexField& other);
  ComplexField& operator-=(const ComplexField& other);
  ComplexField& operator*=(Complex scale);

 private:
  Grid grid_;
  std::vector<Complex> values_;
};

ComplexField operator+(ComplexField a, const ComplexField& b);
ComplexField operator-(ComplexField a, const ComplexField& b);
ComplexField operator*(Complex scale, ComplexField a);

/// Throws GridMismatch when the grids differ.
void require_same_grid(const ComplexField& a, const ComplexField& b);
void require_same_grid(const Grid& a, const Grid& b);

/// Throws InvalidField on any NaN or Inf.
void require_finite(std::span<const Complex> values);
bool all_finite(std::span<const Complex> values) noexcept;

/// Continuum-normalized Fourier coefficients, sorted by ascending frequency.
///   torus: c_k = (1/2pi) int w e^{-ikx} dx
///   line:  c(xi) = dx sum v(x) e^{-i xi x}
struct Spectrum {
  Grid grid;
  std::vector<Complex> coeffs;

  std::vector<double> frequencies() const;
};

}  // namespace hnls
