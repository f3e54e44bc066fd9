#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hnls/errors.hpp"
#include "hnls/nonlinearity.hpp"
#include "hnls/spectral.hpp"
#include "test_util.hpp"

using namespace hnls;
using hnls::testing::random_field;

namespace {

const TorusGrid kGrid(32);

ComplexField constant(Complex c) { return ComplexField::constant(kGrid, c); }

void expect_all_near(const ComplexField& f, Complex value, double tol) {
  for (std::size_t j = 0; j < f.size(); ++j) EXPECT_NEAR(std::abs(f[j] - value), 0.0, tol);
}

}  // namespace

TEST(Power, HypothesesAndFloor) {
  EXPECT_THROW(Power(1.5), InvalidParameter);
  EXPECT_THROW(Power(std::nan("")), InvalidParameter);
  EXPECT_TRUE(Power(3).is_odd_integer());
  EXPECT_TRUE(Power(5).is_odd_integer());
  EXPECT_FALSE(Power(4).is_odd_integer());
  EXPECT_FALSE(Power(3.5).is_odd_integer());
  EXPECT_EQ(Power(3.5).floor_p(), 3);
  EXPECT_EQ(Power(2).floor_p(), 2);
  EXPECT_TRUE(Power(4).is_integer());
}

TEST(ModulusPower, IntegerAndFractionalPathsAgree) {
  for (double m2 : {0.25, 1.0, 3.7}) {
    for (double e : {1.0, 2.0, 3.0, 4.0, -1.0, 0.5, 2.5}) {
      EXPECT_NEAR(modulus_power(m2, e), std::pow(std::sqrt(m2), e),
                  1e-14 * std::pow(std::sqrt(m2), e));
    }
  }
  EXPECT_EQ(modulus_power(0.0, 2.5), 0.0);
  EXPECT_EQ(modulus_power(0.0, 0.0), 1.0);
}

TEST(NP, Examples) {
  const Power p(3);
  expect_all_near(n_p(constant(0.0), p), 0.0, 0.0);
  expect_all_near(n_p(constant(2.0), p), 8.0, 1e-15);
  expect_all_near(n_p(constant(Complex(1, 1)), p), 2.0 * Complex(1, 1), 1e-15);
}

TEST(NP, ZeroMapsToZeroForFractionalPowers) {
  for (double p : {2.0, 2.5, 3.3}) expect_all_near(n_p(constant(0.0), Power(p)), 0.0, 0.0);
}

TEST(NP, GaugeCovariance) {
  const auto u = random_field(kGrid, 7);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> angle(0.0, 2 * hnls::testing::kPi);
  for (double pv : {3.0, 4.5}) {
    const Power p(pv);
    for (int i = 0; i < 20; ++i) {
      const Complex phase = std::polar(1.0, angle(rng));
      const auto lhs = n_p(phase * u, p);
      const auto rhs = phase * n_p(u, p);
      for (std::size_t j = 0; j < u.size(); ++j) {
        EXPECT_NEAR(std::abs(lhs[j] - rhs[j]), 0.0, 1e-13 * (1 + std::abs(rhs[j])));
      }
    }
  }
}

TEST(GDifference, Examples) {
  const Power p(3);
  const auto v = random_field(kGrid, 1);
  const auto w = random_field(kGrid, 2);
  expect_all_near(g_difference(v, v, w, p), 0.0, 0.0);
  const auto zero = constant(0.0);
  const auto reduced = g_difference(v, zero, zero, p);
  const auto direct = n_p(v, p);
  for (std::size_t j = 0; j < v.size(); ++j) EXPECT_EQ(reduced[j], direct[j]);
  expect_all_near(g_difference(constant(1.0), zero, constant(1.0), p), 7.0, 1e-14);
}

TEST(GDifference, Antisymmetric) {
  const Power p(3.5);
  const auto v1 = random_field(kGrid, 1);
  const auto v2 = random_field(kGrid, 2);
  const auto w = random_field(kGrid, 3);
  const auto a = g_difference(v1, v2, w, p);
  const auto b = g_difference(v2, v1, w, p);
  for (std::size_t j = 0; j < a.size(); ++j) EXPECT_EQ(a[j], -b[j]);
}

TEST(GDifference, GridMismatch) {
  const auto a = ComplexField::zeros(TorusGrid(16));
  const auto b = ComplexField::zeros(TorusGrid(32));
  EXPECT_THROW(g_difference(a, b, a, Power(3)), GridMismatch);
  EXPECT_THROW(hamiltonian_density_gradient(a, b, Power(3)), GridMismatch);
}

TEST(TaylorRemainders, Examples) {
  const Power p(3);
  const auto w = random_field(kGrid, 4);
  const auto at_zero = taylor_remainders(constant(0.0), w, p);
  expect_all_near(at_zero.first, 0.0, 1e-14);
  expect_all_near(at_zero.second, 0.0, 1e-13);
  expect_all_near(at_zero.third, 0.0, 1e-14);

  const auto v = random_field(kGrid, 5);
  expect_all_near(taylor_remainders(v, constant(0.0), p).second, 0.0, 1e-13);

  // |2|^2 - 1 - 2 * 1 = 1
  expect_all_near(taylor_remainders(constant(1.0), constant(1.0), p).first, 1.0, 1e-14);
}

TEST(TaylorRemainders, RequiresPAtLeastThree) {
  EXPECT_THROW(taylor_remainders(constant(1.0), constant(1.0), Power(2.5)), InvalidParameter);
}

TEST(TaylorRemainders, PointwiseFormMatchesFieldForm) {
  const Power p(4);
  const auto v = random_field(kGrid, 8);
  const auto w = random_field(kGrid, 9);
  const auto r = taylor_remainders(v, w, p);
  for (std::size_t j = 0; j < v.size(); ++j) {
    const auto t = taylor_remainders_at(v[j], w[j], 4.0);
    EXPECT_EQ(r.first[j].real(), t.first);
    EXPECT_EQ(r.second[j].real(), t.second);
    EXPECT_EQ(r.third[j], t.third);
  }
}

TEST(HamiltonianGradient, ReducesAtZeroData) {
  const Power p(3);
  const auto v = random_field(kGrid, 10);
  const auto w = random_field(kGrid, 11);
  expect_all_near(hamiltonian_density_gradient(constant(0.0), w, p), 0.0, 1e-14);
  const auto reduced = hamiltonian_density_gradient(v, constant(0.0), p);
  const auto direct = n_p(v, p);
  for (std::size_t j = 0; j < v.size(); ++j) EXPECT_NEAR(std::abs(reduced[j] - direct[j]), 0.0, 1e-14);
}

TEST(HamiltonianGradient, MatchesCentralDifferencesOfPotential) {
  // P(v) = int (|v+w|^{p+1} - |w|^{p+1} - (p+1)|w|^{p-1} Re(v conj w)) / (p+1);
  // dP(v + eps h)/d eps = Re int grad conj(h).
  const double eps = 1e-6;
  for (double pv : {3.0, 4.0, 3.5}) {
    const Power p(pv);
    for (std::uint32_t seed = 0; seed < 50; ++seed) {
      const auto v = random_field(kGrid, 100 + seed, 4, 0.5);
      const auto w = random_field(kGrid, 200 + seed, 4, 0.5);
      const auto h = random_field(kGrid, 300 + seed, 4, 0.5);
      auto potential = [&](const ComplexField& x) {
        double sum = 0.0;
          for (std::size_t j = 0; j < x.size(); ++j) {
            const Complex u = x[j] + w[j];
            sum += (std::pow(std::abs(u), pv + 1) - std::pow(std::abs(w[j]), pv + 1) -
                    (pv + 1) * std::pow(std::abs(w[j]), pv - 1) * (x[j] * std::conj(w[j])).real()) /
                   (pv + 1);
          }
        return sum * kGrid.dx();
      };
      const double fd = (potential(v + Complex(eps) * h) - potential(v - Complex(eps) * h)) / (2 * eps);
      const auto grad = hamiltonian_density_gradient(v, w, p);
      double pairing = 0.0;
      for (std::size_t j = 0; j < v.size(); ++j) pairing += (grad[j] * std::conj(h[j])).real();
      pairing *= kGrid.dx();
      EXPECT_NEAR(fd, pairing, 1e-5 * std::max(1.0, std::abs(pairing))) << pv << " " << seed;
    }
  }
}

TEST(TaylorRemainders, AccurateForSmallPerturbations) {
  // Direct formulas in long double as the reference.
  auto reference = [](std::complex<long double> v, std::complex<long double> w, long double p) {
    const auto u = v + w;
    const long double re = (w * std::conj(v)).real();
    const long double aw = std::abs(w);
    const long double first = std::pow(std::abs(u), p - 1) - std::pow(aw, p - 1) -
                              (p - 1) * re * std::pow(aw, p - 3);
    const long double second = std::pow(std::abs(u), p + 1) - std::pow(aw, p + 1) -
                               (p + 1) * re * std::pow(aw, p - 1) - std::pow(std::abs(v), p + 1);
    return std::pair{first, second};
  };
  for (double p : {3.0, 4.0, 5.5}) {
    for (double scale : {1e-1, 1e-3}) {
      const Complex v = scale * Complex(0.3, -0.7);
      const Complex w(1.1, 0.4);
      const auto got = hnls::taylor_remainders_at(v, w, p);
      const auto [f, s] = reference(v, w, p);
      EXPECT_NEAR(got.first, static_cast<double>(f), 1e-9 * std::abs(static_cast<double>(f)));
      EXPECT_NEAR(got.second, static_cast<double>(s), 1e-9 * std::abs(static_cast<double>(s)));
    }
  }
}
