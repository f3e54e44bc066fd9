#pragma once

#include <limits>
#include <vector>

#include "hnls/field.hpp"
#include "hnls/grid.hpp"

namespace hnls {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

Spectrum forward_transform(const ComplexField& f);
ComplexField backward_transform(const Spectrum& spectrum);

/// Free Schrodinger group S(t) = exp(it d_xx), the multiplier exp(-i t k^2).
/// Negative t gives the twisting map S(-t).
ComplexField free_propagate(const ComplexField& f, double t);

/// H^s norm with weight (1+k^2)^s in continuum normalization. s >= 0.
double sobolev_norm(const ComplexField& f, double s);

/// (sum |f|^q dx)^(1/q) by collocation; q = kInfinity gives max |f|. q >= 1.
double lp_norm(const ComplexField& f, double q);

/// int |f_x|^2 dx, evaluated on the spectrum.
double gradient_norm_squared(const ComplexField& f);

/// Spectral derivative of the given order.
ComplexField derivative(const ComplexField& f, int order = 1);

/// Sharp dyadic band N <= |k| < 2N on the torus. N must be a power of two.
ComplexField littlewood_paley(const ComplexField& f, long band);
/// Low block |k| <= 1. Together with the bands N = 2, 4, ..., n/2 this
/// partitions the torus wavenumbers.
ComplexField littlewood_paley_low(const ComplexField& f);

/// 2/3-rule filter: zero every mode with |index| > n/3.
ComplexField dealias(const ComplexField& f);

/// Evaluates the trigonometric series of w at every line collocation point.
ComplexField resample_torus_to_line(const ComplexField& w, const LineGrid& line);

namespace detail {

/// Continuum-normalized coefficients in FFT slot order.
std::vector<Complex> natural_coeffs(const ComplexField& f);
std::vector<Complex> natural_coeffs(const Grid& grid, std::vector<Complex> values);
/// Inverse of natural_coeffs; returns physical samples.
std::vector<Complex> natural_to_values(const Grid& grid, std::vector<Complex> coeffs);

/// Weight attached to |c|^2 in Parseval: 2pi on the torus, dxi/2pi on the line.
double parseval_weight(const Grid& grid) noexcept;

}  // namespace detail

}  // namespace hnls
