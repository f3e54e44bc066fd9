#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "hnls/errors.hpp"
#include "hnls/functionals.hpp"
#include "hnls/line_solver.hpp"
#include "hnls/scenarios.hpp"
#include "hnls/spectral.hpp"
#include "test_util.hpp"

using namespace hnls;
using hnls::testing::kPi;
using hnls::testing::random_field;

namespace {

ComplexField gaussian(const LineGrid& g, double amplitude = 1.0) {
  return ComplexField::sample(g, [=](double x) { return Complex(amplitude * std::exp(-x * x / 2)); });
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(Mass, Examples) {
  EXPECT_EQ(mass(ComplexField::zeros(TorusGrid(16))), 0.0);
  EXPECT_NEAR(mass(ComplexField::constant(TorusGrid(16), 1.0)), kPi, 1e-14);
  EXPECT_NEAR(mass(gaussian(LineGrid(1024, 8))), 0.5 * std::sqrt(kPi), 1e-10);
}

TEST(Energy, Examples) {
  EXPECT_EQ(energy(ComplexField::zeros(TorusGrid(16)), Power(3)), 0.0);
  const double a = 1.7;
  EXPECT_NEAR(energy(ComplexField::constant(TorusGrid(16), a), Power(3)),
              2 * kPi * std::pow(a, 4) / 4, 1e-12);
  const auto wave = plane_wave_exact(TorusGrid(32), 1.0, 3, 3.0, 0.0);
  EXPECT_NEAR(energy(wave, Power(3)), 2 * kPi * (9.0 / 2 + 0.25), 1e-12);
}

TEST(Hamiltonian, ZeroDataAndReductionToEnergy) {
  const LineGrid line(512, 4);
  const auto v = random_field(line, 1);
  const auto w = random_field(line, 2);
  EXPECT_NEAR(hamiltonian(ComplexField::zeros(line), w, Power(3)), 0.0, 1e-14);
  const auto zero = ComplexField::zeros(line);
  for (double p : {3.0, 4.0, 2.5}) {
    EXPECT_NEAR(hamiltonian(v, zero, Power(p)), energy(v, Power(p)), 1e-12 * energy(v, Power(p)));
  }
}

TEST(Hamiltonian, MatchesEnergyPlusCrossTerms) {
  const LineGrid line(512, 4);
  for (double p : {3.0, 4.0, 3.5}) {
    const auto v = random_field(line, 3, 6, 0.3);
    const auto w = random_field(line, 4, 6, 0.3);
    double cross = 0.0;
    for (std::size_t j = 0; j < line.n(); ++j) {
      const double u = std::abs(v[j] + w[j]), a = std::abs(v[j]), b = std::abs(w[j]);
      cross += (std::pow(u, p + 1) - std::pow(b, p + 1) - std::pow(a, p + 1)) / (p + 1) -
               std::pow(b, p - 1) * (v[j] * std::conj(w[j])).real();
    }
    cross *= line.dx();
    const double expected = energy(v, Power(p)) + cross;
    EXPECT_NEAR(hamiltonian(v, w, Power(p)), expected, 1e-10 * std::abs(expected) + 1e-14);
  }
}

TEST(Hamiltonian, QrFormIsTwiceKineticPlusFourTimesPotential) {
  const LineGrid line(512, 4);
  const auto v = random_field(line, 5);
  const auto w = random_field(line, 6);
  const double kinetic = 0.5 * gradient_norm_squared(v);
  const double potential = hamiltonian_potential(v, w, Power(3));
  EXPECT_NEAR(hamiltonian_qr_cubic(v, w), 2 * kinetic + 4 * potential,
              1e-12 * std::abs(2 * kinetic + 4 * potential));
}

TEST(Hamiltonian, GridMismatch) {
  EXPECT_THROW(hamiltonian(ComplexField::zeros(LineGrid(64, 2)), ComplexField::zeros(LineGrid(128, 2)),
                           Power(3)),
               GridMismatch);
}

TEST(RemainderIntegral, VanishesWithoutVOrWithoutWt) {
  const LineGrid line(256, 2);
  const auto v = random_field(line, 7);
  const auto w = random_field(line, 8);
  const auto wt = random_field(line, 9);
  EXPECT_EQ(remainder_integral(ComplexField::zeros(line), w, wt, Power(3)), 0.0);
  EXPECT_EQ(remainder_integral(v, w, ComplexField::zeros(line), Power(3)), 0.0);
}

TEST(RemainderIntegral, MatchesCentralDifferenceOfHamiltonian) {
  const LineGrid line(1024, 8);
  const TorusGrid torus(64);
  const auto v0 = gaussian(line, 0.7);
  const auto w0 = ComplexField::sample(torus, [](double x) {
    return std::polar(0.8, x) + std::polar(0.4, -2.0 * x);
  });
  auto errors = [&](double dt) {
    StepperConfig cfg;
    cfg.dt = dt;
    std::vector<double> h, r;
    evolve_coupled(v0, w0, 0.2, cfg, Power(3), [&](const CoupledSample& s) {
      h.push_back(hamiltonian(s.state.v.v, s.state.w_line, Power(3)));
      r.push_back(remainder_integral(s.state.v.v, s.state.w_line, s.w_t_line, Power(3)));
    });
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 1; i + 1 < h.size(); ++i) {
      worst = std::max(worst, std::abs((h[i + 1] - h[i - 1]) / (2 * dt) - r[i]));
    }
    for (double x : r) scale = std::max(scale, std::abs(x));
    return worst / scale;
  };
  const double e1 = errors(2e-3), e2 = errors(1e-3);
  EXPECT_LE(e1, 1e-3);
  EXPECT_NEAR(e1 / e2, 4.0, 0.6);
}

TEST(MassRate, MatchesCentralDifferenceOfMass) {
  const LineGrid line(1024, 8);
  const TorusGrid torus(64);
  const auto v0 = gaussian(line, 0.7);
  const auto w0 = ComplexField::sample(torus, [](double x) { return std::polar(0.9, x); });
  StepperConfig cfg;
  cfg.dt = 1e-3;
  std::vector<double> m, rate;
  evolve_coupled(v0, w0, 0.2, cfg, Power(3), [&](const CoupledSample& s) {
    m.push_back(mass(s.state.v.v));
    rate.push_back(mass_rate(s.state.v.v, s.state.w_line, Power(3)));
  });
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 1; i + 1 < m.size(); ++i) {
    worst = std::max(worst, std::abs((m[i + 1] - m[i - 1]) / (2 * cfg.dt) - rate[i]));
    scale = std::max(scale, std::abs(rate[i]));
  }
  EXPECT_LE(worst / scale, 1e-3);
}

TEST(HybridMass, Examples) {
  const LineGrid line(512, 4);
  const auto v = random_field(line, 10);
  const auto w = random_field(TorusGrid(32), 11);
  const auto wl = resample_torus_to_line(w, line);
  EXPECT_NEAR(hybrid_mass(wl, wl), 0.0, 1e-14);
  EXPECT_NEAR(hybrid_mass(v, ComplexField::zeros(line)), 2 * mass(v), 1e-13);
  const auto u = v + wl;
  double direct = 0.0;
  for (std::size_t j = 0; j < line.n(); ++j) direct += std::norm(u[j]) - std::norm(wl[j]);
  direct *= line.dx();
  EXPECT_NEAR(hybrid_mass(u, wl), direct, 1e-10 * std::abs(direct));
  EXPECT_THROW(hybrid_mass(u, ComplexField::zeros(LineGrid(256, 4))), GridMismatch);
}

TEST(ConservedLedger, RejectsNonFiniteRows) {
  ConservedLedger ledger;
  LedgerRow row;
  row.energy_v = std::nan("");
  EXPECT_THROW(ledger.append(row), InvalidField);
  EXPECT_TRUE(ledger.empty());
}

TEST(ConservedLedger, CsvHeaderAndPrecision) {
  ConservedLedger ledger;
  LedgerRow row;
  row.t = 0.1;
  row.mass_v = 1.0 / 3.0;
  ledger.append(row);
  std::ostringstream os;
  ledger.write_csv(os);
  const std::string text = os.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "t,mass_v,energy_v,energy_w,mass_w,H,intR,hybrid_mass,h1_v,hs_w");
  EXPECT_NE(text.find("0.10000000000000001,0.33333333333333331,0,"), std::string::npos);
  EXPECT_EQ(ledger.row(0).mass_v, 1.0 / 3.0);
}

namespace {

ConservedLedger constant_ledger(std::size_t n) {
  ConservedLedger ledger;
  for (std::size_t i = 0; i < n; ++i) {
    LedgerRow row;
    row.t = 0.1 * i;
    row.h1_w = 2.0;
    row.hs_w = 3.0;
    row.mass_v = 1.0;
    row.energy_v = 2.0;
    row.hamiltonian_h = 2.5;
    ledger.append(row);
  }
  return ledger;
}

}  // namespace

TEST(EnvelopeCheck, EmptyLedgerThrows) {
  EXPECT_THROW(envelope_check(ConservedLedger{}, EnvelopeKind::EnergyBound, {}), EmptyLedger);
}

TEST(EnvelopeCheck, ConstantLedgerFitsInitialRatio) {
  const auto ledger = constant_ledger(20);
  EnvelopeParams params;
  params.w0_h1 = 1.0;
  const auto energy_bound = envelope_check(ledger, EnvelopeKind::EnergyBound, params);
  EXPECT_DOUBLE_EQ(energy_bound.fitted, 2.0 / (1.0 + 1.0));
  EXPECT_TRUE(energy_bound.no_crossing);
  const auto hs = envelope_check(ledger, EnvelopeKind::HsExponential, params);
  EXPECT_EQ(hs.fitted, 0.0);
  EXPECT_TRUE(hs.no_crossing);
  const auto eq = envelope_check(ledger, EnvelopeKind::Equivalence, params);
  EXPECT_DOUBLE_EQ(eq.fitted, 0.5);
  EXPECT_TRUE(eq.no_crossing);
}

TEST(EnvelopeCheck, DetectsCrossingOutsideFitWindow) {
  auto ledger = constant_ledger(10);
  LedgerRow late = ledger.row(9);
  late.t = 1.0;
  late.hs_w = 30.0;
  ledger.append(late);
  EnvelopeParams params;
  params.fit_fraction = 0.5;
  const auto hs = envelope_check(ledger, EnvelopeKind::HsExponential, params);
  EXPECT_FALSE(hs.no_crossing);
  EXPECT_EQ(hs.crossings, 1u);
  EXPECT_DOUBLE_EQ(hs.first_crossing_time, 1.0);
  params.fit_fraction = 0.0;
  EXPECT_THROW(envelope_check(ledger, EnvelopeKind::HsExponential, params), InvalidParameter);
}

TEST(EnvelopeCheck, PlaneWaveHasNegligibleExponentialRate) {
  const TorusGrid g(64);
  StepperConfig cfg;
  cfg.dt = 1e-3;
  const auto traj = evolve_torus(plane_wave_exact(g, 1.0, 2, 3.0, 0.0), 1.0, cfg, Power(3), 2.0);
  ConservedLedger ledger;
  for (const auto& r : traj.records) {
    LedgerRow row;
    row.t = r.t;
    row.hs_w = r.hs;
    row.h1_w = r.h1;
    ledger.append(row);
  }
  const auto rep = envelope_check(ledger, EnvelopeKind::HsExponential, {});
  EXPECT_LT(rep.fitted, 1e-9);
  EXPECT_TRUE(rep.no_crossing);
}
