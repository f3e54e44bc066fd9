#include "hnls/spectral.hpp"

#include <cmath>
#include <string>

#include "hnls/errors.hpp"
#include "hnls/fft.hpp"

namespace hnls {
namespace detail {

std::vector<Complex> natural_coeffs(const Grid& grid, std::vector<Complex> values) {
  fft::forward(values);
  const auto n = values.size();
  if (is_torus(grid)) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& c : values) c *= scale;
  } else {
    // The grid starts at x = -L, contributing exp(i xi_m L) = (-1)^m.
    const double dx = grid_dx(grid);
    for (std::size_t s = 0; s < n; ++s) values[s] *= (s % 2 == 0) ? dx : -dx;
  }
  return values;
}

std::vector<Complex> natural_coeffs(const ComplexField& f) {
  return natural_coeffs(f.grid(), std::vector<Complex>(f.values().begin(), f.values().end()));
}

std::vector<Complex> natural_to_values(const Grid& grid, std::vector<Complex> coeffs) {
  const auto n = coeffs.size();
  if (!is_torus(grid)) {
    const double scale = 1.0 / (static_cast<double>(n) * grid_dx(grid));
    for (std::size_t s = 0; s < n; ++s) coeffs[s] *= (s % 2 == 0) ? scale : -scale;
  }
  fft::backward(coeffs);
  return coeffs;
}

double parseval_weight(const Grid& grid) noexcept {
  if (is_torus(grid)) return kTwoPi;
  return std::get<LineGrid>(grid).dxi() / kTwoPi;
}

}  // namespace detail

namespace {

template <typename Multiplier>
ComplexField apply_multiplier(const ComplexField& f, Multiplier&& symbol) {
  auto c = detail::natural_coeffs(f);
  for (std::size_t s = 0; s < c.size(); ++s) c[s] *= symbol(s, grid_wavenumber(f.grid(), s));
  return ComplexField(f.grid(), detail::natural_to_values(f.grid(), std::move(c)));
}

long signed_index(std::size_t slot, std::size_t n) {
  return slot < n / 2 ? static_cast<long>(slot) : static_cast<long>(slot) - static_cast<long>(n);
}

const TorusGrid& require_torus(const ComplexField& f, const char* op) {
  if (!is_torus(f.grid())) {
    throw Unsupported(std::string(op) + " is only defined for torus fields");
  }
  return std::get<TorusGrid>(f.grid());
}

}  // namespace

Spectrum forward_transform(const ComplexField& f) {
  auto c = detail::natural_coeffs(f);
  const auto n = c.size();
  std::vector<Complex> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = c[(i + n / 2) % n];
  return Spectrum{f.grid(), std::move(sorted)};
}

ComplexField backward_transform(const Spectrum& spectrum) {
  const auto n = spectrum.coeffs.size();
  if (n != grid_size(spectrum.grid)) throw InvalidField("spectrum size does not match grid");
  require_finite(spectrum.coeffs);
  std::vector<Complex> natural(n);
  for (std::size_t i = 0; i < n; ++i) natural[(i + n / 2) % n] = spectrum.coeffs[i];
  return ComplexField(spectrum.grid, detail::natural_to_values(spectrum.grid, std::move(natural)));
}

ComplexField free_propagate(const ComplexField& f, double t) {
  if (!std::isfinite(t)) throw InvalidParameter("propagation time must be finite");
  if (t == 0.0) return f;
  return apply_multiplier(f, [t](std::size_t, double k) { return std::polar(1.0, -t * k * k); });
}

double sobolev_norm(const ComplexField& f, double s) {
  if (!(s >= 0.0)) throw InvalidParameter("Sobolev index must be >= 0");
  const auto c = detail::natural_coeffs(f);
  double sum = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double k = grid_wavenumber(f.grid(), j);
    const double weight = s == 0.0 ? 1.0 : std::pow(1.0 + k * k, s);
    sum += weight * std::norm(c[j]);
  }
  return std::sqrt(sum * detail::parseval_weight(f.grid()));
}

double lp_norm(const ComplexField& f, double q) {
  if (!(q >= 1.0)) throw InvalidParameter("Lebesgue exponent must be >= 1");
  if (std::isinf(q)) {
    double m = 0.0;
    for (const auto& z : f.values()) m = std::max(m, std::abs(z));
    return m;
  }
  double sum = 0.0;
  if (q == 2.0) {
    for (const auto& z : f.values()) sum += std::norm(z);
    return std::sqrt(sum * grid_dx(f.grid()));
  }
  for (const auto& z : f.values()) sum += std::pow(std::abs(z), q);
  return std::pow(sum * grid_dx(f.grid()), 1.0 / q);
}

double gradient_norm_squared(const ComplexField& f) {
  const auto c = detail::natural_coeffs(f);
  double sum = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double k = grid_wavenumber(f.grid(), j);
    sum += k * k * std::norm(c[j]);
  }
  return sum * detail::parseval_weight(f.grid());
}

ComplexField derivative(const ComplexField& f, int order) {
  if (order < 0) throw InvalidParameter("derivative order must be >= 0");
  if (order == 0) return f;
  return apply_multiplier(f, [order](std::size_t, double k) {
    return std::pow(Complex(0.0, k), order);
  });
}

ComplexField littlewood_paley(const ComplexField& f, long band) {
  const auto& grid = require_torus(f, "littlewood_paley");
  if (band < 1 || !is_power_of_two(static_cast<std::size_t>(band))) {
    throw InvalidParameter("Littlewood-Paley band must be a power of two, got " +
                           std::to_string(band));
  }
  const auto n = grid.n();
  return apply_multiplier(f, [band, n](std::size_t slot, double) {
    const long k = std::abs(signed_index(slot, n));
    return (k >= band && k < 2 * band) ? Complex(1.0) : Complex(0.0);
  });
}

ComplexField littlewood_paley_low(const ComplexField& f) {
  const auto& grid = require_torus(f, "littlewood_paley_low");
  const auto n = grid.n();
  return apply_multiplier(f, [n](std::size_t slot, double) {
    return std::abs(signed_index(slot, n)) <= 1 ? Complex(1.0) : Complex(0.0);
  });
}

ComplexField dealias(const ComplexField& f) {
  const auto n = grid_size(f.grid());
  const long cutoff = static_cast<long>(n / 3);
  return apply_multiplier(f, [n, cutoff](std::size_t slot, double) {
    return std::abs(signed_index(slot, n)) > cutoff ? Complex(0.0) : Complex(1.0);
  });
}

ComplexField resample_torus_to_line(const ComplexField& w, const LineGrid& line) {
  const auto& torus = require_torus(w, "resample_torus_to_line");
  require_commensurate(torus, line);
  const auto c = detail::natural_coeffs(w);
  const auto nt = torus.n();
  const auto nl = line.n();
  const auto periods = static_cast<std::size_t>(line.periods_k());
  std::vector<Complex> out(nl);

  if (nl % periods == 0) {
    // One period holds P = nl/K line points, P >= 2 nt, so the series is an
    // exact zero-padded inverse DFT on [-L, -L + 2pi), tiled K times.
    const auto cell = nl / periods;
    std::vector<Complex> padded(cell);
    for (std::size_t s = 0; s < nt; ++s) {
      const long k = signed_index(s, nt);
      // exp(-ikL) with L = pi K
      const bool flip = ((k * line.periods_k()) % 2) != 0;
      const auto slot = static_cast<std::size_t>((k + static_cast<long>(cell)) %
                                                 static_cast<long>(cell));
      padded[slot] = flip ? -c[s] : c[s];
    }
    fft::backward(padded);
    for (std::size_t r = 0; r < periods; ++r) {
      std::copy(padded.begin(), padded.end(), out.begin() + static_cast<long>(r * cell));
    }
  } else {
    for (std::size_t j = 0; j < nl; ++j) {
      // Reduce to one period first so the phase argument stays small.
      const double x = std::remainder(line.x(j), kTwoPi);
      Complex sum = 0.0;
      for (std::size_t s = 0; s < nt; ++s) {
        sum += c[s] * std::polar(1.0, static_cast<double>(signed_index(s, nt)) * x);
      }
      out[j] = sum;
    }
  }
  return ComplexField(line, std::move(out));
}

}  // namespace hnls
