#include "hnls/functionals.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "hnls/errors.hpp"
#include "hnls/spectral.hpp"

namespace hnls {

double mass(const ComplexField& v) {
  const double l2 = lp_norm(v, 2.0);
  return 0.5 * l2 * l2;
}

double energy(const ComplexField& v, const Power& p) {
  const double pv = p.value();
  double potential = 0.0;
  for (const auto& z : v.values()) potential += modulus_power(z, pv + 1.0);
  potential *= grid_dx(v.grid()) / (pv + 1.0);
  return 0.5 * gradient_norm_squared(v) + potential;
}

double hamiltonian_potential(const ComplexField& v, const ComplexField& w_line, const Power& p) {
  require_same_grid(v, w_line);
  const double pv = p.value();
  double sum = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const Complex a = v[j];
    const Complex b = w_line[j];
    sum += (modulus_power(a + b, pv + 1.0) - modulus_power(b, pv + 1.0)) / (pv + 1.0) -
           modulus_power(b, pv - 1.0) * (a * std::conj(b)).real();
  }
  return sum * grid_dx(v.grid());
}

double hamiltonian(const ComplexField& v, const ComplexField& w_line, const Power& p) {
  return 0.5 * gradient_norm_squared(v) + hamiltonian_potential(v, w_line, p);
}

double hamiltonian_qr_cubic(const ComplexField& v, const ComplexField& w_line) {
  require_same_grid(v, w_line);
  // (q+w)^2 (r+conj w)^2 - |w|^4 - 2(q conj w + r w)|w|^2 at (q, r) = (v, conj v)
  double sum = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const Complex q = v[j];
    const Complex r = std::conj(v[j]);
    const Complex w = w_line[j];
    const Complex term = (q + w) * (q + w) * (r + std::conj(w)) * (r + std::conj(w)) -
                         std::norm(w) * std::norm(w) -
                         2.0 * (q * std::conj(w) + r * w) * std::norm(w);
    sum += term.real();
  }
  return gradient_norm_squared(v) + sum * grid_dx(v.grid());
}

double remainder_integral(const ComplexField& v, const ComplexField& w_line,
                          const ComplexField& w_t_line, const Power& p) {
  require_same_grid(v, w_line);
  require_same_grid(v, w_t_line);
  const double pv = p.value();
  double sum = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const Complex a = v[j];
    const Complex b = w_line[j];
    const Complex bt = w_t_line[j];
    const Complex ubar = std::conj(a + b);
    const double first =
        (modulus_power(a + b, pv - 1.0) * ubar * bt - modulus_power(b, pv - 1.0) * ubar * bt)
            .real();
    const double second = (pv - 1.0) * modulus_power(b, pv - 3.0) * (bt * std::conj(b)).real() *
                          (b * std::conj(a)).real();
    sum += first - second;
  }
  return sum * grid_dx(v.grid());
}

double hybrid_mass(const ComplexField& u, const ComplexField& w_line) {
  require_same_grid(u, w_line);
  double sum = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const Complex v = u[j] - w_line[j];
    sum += std::norm(v) + 2.0 * (v * std::conj(w_line[j])).real();
  }
  return sum * grid_dx(u.grid());
}

double mass_rate(const ComplexField& v, const ComplexField& w_line, const Power& p) {
  require_same_grid(v, w_line);
  const double pv = p.value();
  double sum = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const Complex g = perturbed_nonlinearity(v[j], w_line[j], pv);
    sum += (Complex(0.0, 1.0) * v[j] * std::conj(g)).real();
  }
  return sum * grid_dx(v.grid());
}

void ConservedLedger::append(const LedgerRow& row) {
  const double values[] = {row.t,           row.mass_v,      row.energy_v,
                           row.energy_w,    row.mass_w,      row.hamiltonian_h,
                           row.remainder_integral, row.hybrid_mass, row.h1_v,
                           row.hs_w,        row.h1_w};
  for (double x : values) {
    if (!std::isfinite(x)) throw InvalidField("ledger row contains a non-finite value");
  }
  times.push_back(row.t);
  mass_v.push_back(row.mass_v);
  energy_v.push_back(row.energy_v);
  energy_w.push_back(row.energy_w);
  mass_w.push_back(row.mass_w);
  hamiltonian_h.push_back(row.hamiltonian_h);
  remainder_integral.push_back(row.remainder_integral);
  hybrid_mass.push_back(row.hybrid_mass);
  h1_v.push_back(row.h1_v);
  hs_w.push_back(row.hs_w);
  h1_w.push_back(row.h1_w);
}

LedgerRow ConservedLedger::row(std::size_t i) const {
  return LedgerRow{times.at(i),          mass_v.at(i),      energy_v.at(i),
                   energy_w.at(i),       mass_w.at(i),      hamiltonian_h.at(i),
                   remainder_integral.at(i), hybrid_mass.at(i), h1_v.at(i),
                   hs_w.at(i),           h1_w.at(i)};
}

const char* ConservedLedger::csv_header() noexcept {
  return "t,mass_v,energy_v,energy_w,mass_w,H,intR,hybrid_mass,h1_v,hs_w";
}

void ConservedLedger::write_csv(std::ostream& os) const {
  os << csv_header() << '\n';
  char buf[32];
  for (std::size_t i = 0; i < size(); ++i) {
    const double cols[] = {times[i],         mass_v[i],      energy_v[i], energy_w[i],
                           mass_w[i],        hamiltonian_h[i], remainder_integral[i],
                           hybrid_mass[i],   h1_v[i],        hs_w[i]};
    for (std::size_t c = 0; c < std::size(cols); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", cols[c]);
      if (c) os << ',';
      os << buf;
    }
    os << '\n';
  }
}

const char* to_string(EnvelopeKind kind) noexcept {
  switch (kind) {
    case EnvelopeKind::EnergyBound: return "energy_bound";
    case EnvelopeKind::HsExponential: return "hs_exponential";
    case EnvelopeKind::Equivalence: return "equivalence";
  }
  return "unknown";
}

namespace {

std::size_t fit_window_end(const ConservedLedger& ledger, double fraction) {
  const double t0 = ledger.times.front();
  const double span = ledger.times.back() - t0;
  const double limit = t0 + fraction * span + 1e-12 * std::max(1.0, std::abs(span));
  std::size_t end = 0;
  while (end < ledger.size() && ledger.times[end] <= limit) ++end;
  return std::max<std::size_t>(end, 1);
}

void record_crossing(EnvelopeReport& report, double t) {
  if (report.crossings == 0) report.first_crossing_time = t;
  ++report.crossings;
  report.no_crossing = false;
}

}  // namespace

EnvelopeReport envelope_check(const ConservedLedger& ledger, EnvelopeKind kind,
                              const EnvelopeParams& params) {
  if (ledger.empty()) throw EmptyLedger("envelope check needs at least one sample");
  if (!(params.fit_fraction > 0.0 && params.fit_fraction <= 1.0)) {
    throw InvalidParameter("fit_fraction must be in (0, 1]");
  }
  EnvelopeReport report;
  report.kind = kind;
  const std::size_t fit_end = fit_window_end(ledger, params.fit_fraction);
  const double tol = params.tolerance;
  const double t0 = ledger.times.front();

  switch (kind) {
    case EnvelopeKind::EnergyBound: {
      const double a = params.w0_h1;
      const double scale = a + std::pow(a, 0.5 * (params.p + 1.0));
      if (scale <= 0.0) {
        for (std::size_t i = 0; i < ledger.size(); ++i) {
          if (ledger.h1_w[i] > tol) record_crossing(report, ledger.times[i]);
        }
        break;
      }
      for (std::size_t i = 0; i < fit_end; ++i) {
        report.fitted = std::max(report.fitted, ledger.h1_w[i] / scale);
      }
      for (std::size_t i = 0; i < ledger.size(); ++i) {
        if (ledger.h1_w[i] > report.fitted * scale * (1.0 + tol)) {
          record_crossing(report, ledger.times[i]);
        }
      }
      break;
    }
    case EnvelopeKind::HsExponential: {
      const double base = ledger.hs_w.front();
      if (base <= 0.0) {
        for (std::size_t i = 0; i < ledger.size(); ++i) {
          if (ledger.hs_w[i] > tol) record_crossing(report, ledger.times[i]);
        }
        break;
      }
      double stt = 0.0, sty = 0.0;
      for (std::size_t i = 0; i < ledger.size(); ++i) {
        const double t = ledger.times[i] - t0;
        const double y = std::log(ledger.hs_w[i] / base);
        stt += t * t;
        sty += t * y;
        if (i < fit_end && t > 0.0) report.fitted = std::max(report.fitted, y / t);
      }
      report.least_squares_rate = stt > 0.0 ? sty / stt : 0.0;
      for (std::size_t i = 0; i < ledger.size(); ++i) {
        const double t = ledger.times[i] - t0;
        if (ledger.hs_w[i] > base * std::exp(report.fitted * t) * (1.0 + tol)) {
          record_crossing(report, ledger.times[i]);
        }
      }
      break;
    }
    case EnvelopeKind::Equivalence: {
      constexpr double kTiny = 1e-300;
      for (std::size_t i = 0; i < fit_end; ++i) {
        const double m = ledger.mass_v[i];
        if (m > kTiny) {
          report.fitted = std::max(
              report.fitted, std::abs(ledger.hamiltonian_h[i] - ledger.energy_v[i]) / m);
        }
      }
      const double c = report.fitted;
      for (std::size_t i = 0; i < ledger.size(); ++i) {
        const double m = ledger.mass_v[i];
        const double h = ledger.hamiltonian_h[i];
        const double e = ledger.energy_v[i];
        const double slack = tol * (std::abs(c * m) + std::abs(h) + std::abs(e)) + kTiny;
        if (h > c * m + e + slack || e > c * m + h + slack) {
          record_crossing(report, ledger.times[i]);
        }
      }
      break;
    }
  }
  return report;
}

}  // namespace hnls
