#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "hnls/field.hpp"
#include "hnls/nonlinearity.hpp"

namespace hnls {

/// M(v) = int |v|^2 / 2
double mass(const ComplexField& v);

/// E(v) = int |v_x|^2 / 2 + |v|^(p+1) / (p+1)
double energy(const ComplexField& v, const Power& p);

/// Time-dependent Hamiltonian of the perturbed line problem,
///   H(v) = int |v_x|^2/2 + (|v+w|^(p+1) - |w|^(p+1) - (p+1)|w|^(p-1) Re(v conj w)) / (p+1).
double hamiltonian(const ComplexField& v, const ComplexField& w_line, const Power& p);

/// The (q, r) form for the cubic case evaluated at (q, r) = (v, conj v):
///   int |v_x|^2 + |v+w|^4 - |w|^4 - 4 Re(v conj w) |w|^2.
/// Equals 2 * (kinetic part of H) + 4 * (potential part of H); there is no
/// single rescaling between the two normalizations.
double hamiltonian_qr_cubic(const ComplexField& v, const ComplexField& w_line);

/// Potential part of H alone: H minus int |v_x|^2 / 2.
double hamiltonian_potential(const ComplexField& v, const ComplexField& w_line, const Power& p);

/// int R dx, the part of dH/dt carried by w_t.
double remainder_integral(const ComplexField& v, const ComplexField& w_line,
                          const ComplexField& w_t_line, const Power& p);

/// int |u|^2 - |w|^2 dx, evaluated as int |v|^2 + 2 Re(v conj w) dx with v = u - w.
double hybrid_mass(const ComplexField& u, const ComplexField& w_line);

/// (iv, G(v, 0, w)) = Re int i v conj(G): the right-hand side of dM/dt.
double mass_rate(const ComplexField& v, const ComplexField& w_line, const Power& p);

struct LedgerRow {
  double t = 0.0;
  double mass_v = 0.0;
  double energy_v = 0.0;
  double energy_w = 0.0;
  double mass_w = 0.0;
  double hamiltonian_h = 0.0;
  double remainder_integral = 0.0;
  double hybrid_mass = 0.0;
  double h1_v = 0.0;
  double hs_w = 0.0;
  double h1_w = 0.0;
};

/// Column-aligned time series of the monitored quantities.
class ConservedLedger {
 public:
  void append(const LedgerRow& row);
  std::size_t size() const noexcept { return times.size(); }
  bool empty() const noexcept { return times.empty(); }
  LedgerRow row(std::size_t i) const;

  /// Header t,mass_v,energy_v,energy_w,mass_w,H,intR,hybrid_mass,h1_v,hs_w
  /// and one row per sample at 17 significant digits.
  void write_csv(std::ostream& os) const;
  static const char* csv_header() noexcept;

  std::vector<double> times;
  std::vector<double> mass_v;
  std::vector<double> energy_v;
  std::vector<double> energy_w;
  std::vector<double> mass_w;
  std::vector<double> hamiltonian_h;
  std::vector<double> remainder_integral;
  std::vector<double> hybrid_mass;
  std::vector<double> h1_v;
  std::vector<double> hs_w;
  /// Not exported to CSV; feeds the energy-bound envelope.
  std::vector<double> h1_w;
};

enum class EnvelopeKind { EnergyBound, HsExponential, Equivalence };

const char* to_string(EnvelopeKind kind) noexcept;

struct EnvelopeParams {
  double p = 3.0;
  /// ||w0||_{H^1}; used by EnergyBound.
  double w0_h1 = 0.0;
  /// Fraction of the series (from t = 0) the constant is fitted on; the
  /// crossing check always covers the whole series.
  double fit_fraction = 1.0;
  /// Relative slack allowed before a sample counts as crossing.
  double tolerance = 1e-9;
};

struct EnvelopeReport {
  EnvelopeKind kind = EnvelopeKind::EnergyBound;
  /// Smallest constant for which the envelope holds on the fit window.
  double fitted = 0.0;
  /// Exponential only: least-squares slope of log(||w||_{H^s}/||w0||_{H^s}) on t.
  double least_squares_rate = 0.0;
  bool no_crossing = true;
  std::size_t crossings = 0;
  double first_crossing_time = 0.0;
};

/// Fits the single free constant of the chosen envelope and checks the
/// series against it. Throws EmptyLedger on an empty ledger.
EnvelopeReport envelope_check(const ConservedLedger& ledger, EnvelopeKind kind,
                              const EnvelopeParams& params);

}  // namespace hnls
