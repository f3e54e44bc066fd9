#pragma once

#include <cmath>

#include "hnls/field.hpp"

namespace hnls {

/// Exponent of the defocusing nonlinearity |u|^(p-1) u, p >= 2.
class Power {
 public:
  explicit Power(double p);

  double value() const noexcept { return p_; }
  bool is_odd_integer() const noexcept { return odd_integer_; }
  bool is_integer() const noexcept { return integer_; }
  /// [p] = sup{k in Z : k <= p}
  int floor_p() const noexcept { return floor_p_; }

 private:
  double p_;
  bool integer_;
  bool odd_integer_;
  int floor_p_;
};

/// (|z|^2)^(e/2) with 0^e = 0 for e > 0 and 0^0 = 1. Integer exponents take
/// a multiplication-only path.
double modulus_power(double modulus_squared, double exponent) noexcept;

inline double modulus_power(Complex z, double exponent) noexcept {
  return modulus_power(std::norm(z), exponent);
}

/// |z|^(p-1) z
inline Complex power_nonlinearity(Complex z, double p) noexcept {
  return modulus_power(z, p - 1.0) * z;
}

/// |v+w|^(p-1)(v+w) - |w|^(p-1) w
inline Complex perturbed_nonlinearity(Complex v, Complex w, double p) noexcept {
  return power_nonlinearity(v + w, p) - power_nonlinearity(w, p);
}

ComplexField n_p(const ComplexField& u, const Power& p);

/// G(v1, v2, w) = |v1+w|^(p-1)(v1+w) - |v2+w|^(p-1)(v2+w), pointwise.
ComplexField g_difference(const ComplexField& v1, const ComplexField& v2,
                          const ComplexField& w, const Power& p);

struct TaylorRemainders {
  /// |v+w|^(p-1) - |w|^(p-1) - (p-1) Re(w conj v) |w|^(p-3)
  ComplexField first;
  /// |v+w|^(p+1) - |w|^(p+1) - (p+1) Re(w conj v) |w|^(p-1) - |v|^(p+1)
  ComplexField second;
  /// |v+w|^(p-1)(v+w) - |w|^(p-1) w - ((p-1) Re(w conj v) |w|^(p-3) w + v |w|^(p-1))
  ComplexField third;
};

/// Pointwise remainders of the three second-order expansions around w.
/// Requires p >= 3; for p = 3 the factor |w|^(p-3) is taken as 1 everywhere.
TaylorRemainders taylor_remainders(const ComplexField& v, const ComplexField& w, const Power& p);

/// Pointwise versions used by the estimates lab.
struct TaylorPoint {
  double first;
  double second;
  Complex third;
};
TaylorPoint taylor_remainders_at(Complex v, Complex w, double p) noexcept;

/// Real L^2 gradient of the potential part P of H, |v+w|^(p-1)(v+w) - |w|^(p-1) w,
/// so that d/de P(v + e h) = Re int grad conj(h).
ComplexField hamiltonian_density_gradient(const ComplexField& v, const ComplexField& w,
                                          const Power& p);

}  // namespace hnls
