#include "hnls/nonlinearity.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "hnls/errors.hpp"

namespace hnls {

Power::Power(double p) : p_(p) {
  if (!std::isfinite(p) || p < 2.0) {
    throw InvalidParameter("nonlinearity power must satisfy p >= 2, got " + std::to_string(p));
  }
  floor_p_ = static_cast<int>(std::floor(p));
  integer_ = static_cast<double>(floor_p_) == p;
  odd_integer_ = integer_ && (floor_p_ % 2 == 1);
}

double modulus_power(double modulus_squared, double exponent) noexcept {
  if (exponent == 0.0) return 1.0;
  if (modulus_squared == 0.0) return 0.0;
  if (exponent == std::floor(exponent) && std::abs(exponent) <= 64.0) {
    const int e = static_cast<int>(exponent);
    const double base = e > 0 ? modulus_squared : 1.0 / modulus_squared;
    const int magnitude = e > 0 ? e : -e;
    double r = (magnitude % 2 == 1) ? std::sqrt(base) : 1.0;
    for (int i = 0; i < magnitude / 2; ++i) r *= base;
    return r;
  }
  return std::exp(0.5 * exponent * std::log(modulus_squared));
}

namespace {

template <typename Fn>
ComplexField pointwise(const ComplexField& a, Fn&& fn) {
  std::vector<Complex> out(a.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = fn(j);
  return ComplexField(a.grid(), std::move(out));
}

}  // namespace

ComplexField n_p(const ComplexField& u, const Power& p) {
  const double pv = p.value();
  return pointwise(u, [&](std::size_t j) { return power_nonlinearity(u[j], pv); });
}

ComplexField g_difference(const ComplexField& v1, const ComplexField& v2,
                          const ComplexField& w, const Power& p) {
  require_same_grid(v1, v2);
  require_same_grid(v1, w);
  const double pv = p.value();
  return pointwise(v1, [&](std::size_t j) {
    return power_nonlinearity(v1[j] + w[j], pv) - power_nonlinearity(v2[j] + w[j], pv);
  });
}

namespace {

struct PowerIncrement {
  /// (1+x)^a - 1
  double first;
  /// (1+x)^a - 1 - a x
  double second;
};

// Both increments without cancellation for small x.
PowerIncrement power_increment(double x, double a) noexcept {
  const double first = std::expm1(a * std::log1p(x));
  if (std::abs(x) >= 0.1) return {first, first - a * x};
  double term = a * x;
  double sum = 0.0;
  for (int k = 2; k < 80; ++k) {
    term *= (a - k + 1) * x / k;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return {first, sum};
}

}  // namespace

TaylorPoint taylor_remainders_at(Complex v, Complex w, double p) noexcept {
  const double re_wv = (w * std::conj(v)).real();
  const double aw = std::norm(w);
  const double av = std::norm(v);
  TaylorPoint out{};
  if (aw == 0.0) {
    out.first = modulus_power(av, p - 1.0);
    out.second = 0.0;
    out.third = out.first * v;
    return out;
  }
  // |u|^2 = |w|^2 (1 + x); expanding the powers of (1 + x) about x = 0 keeps
  // the second-order remainders accurate when |v| << |w|.
  const double x = (2.0 * re_wv + av) / aw;
  const double alpha = 0.5 * (p - 1.0);
  const double beta = 0.5 * (p + 1.0);
  const auto lo = power_increment(x, alpha);
  const auto hi = power_increment(x, beta);
  const double w_pm1 = modulus_power(aw, p - 1.0);
  const double w_pm3 = modulus_power(aw, p - 3.0);
  out.first = w_pm1 * lo.second + alpha * av * w_pm3;
  out.second = w_pm1 * aw * hi.second + beta * av * w_pm1 - modulus_power(av, p + 1.0);
  out.third = w * out.first + v * (w_pm1 * lo.first);
  return out;
}

TaylorRemainders taylor_remainders(const ComplexField& v, const ComplexField& w, const Power& p) {
  if (p.value() < 3.0) {
    throw InvalidParameter("Taylor remainder estimates require p >= 3");
  }
  require_same_grid(v, w);
  const auto n = v.size();
  std::vector<Complex> first(n), second(n), third(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto r = taylor_remainders_at(v[j], w[j], p.value());
    first[j] = r.first;
    second[j] = r.second;
    third[j] = r.third;
  }
  return TaylorRemainders{ComplexField(v.grid(), std::move(first)),
                          ComplexField(v.grid(), std::move(second)),
                          ComplexField(v.grid(), std::move(third))};
}

ComplexField hamiltonian_density_gradient(const ComplexField& v, const ComplexField& w,
                                          const Power& p) {
  require_same_grid(v, w);
  const double pv = p.value();
  return pointwise(v, [&](std::size_t j) { return perturbed_nonlinearity(v[j], w[j], pv); });
}

}  // namespace hnls
