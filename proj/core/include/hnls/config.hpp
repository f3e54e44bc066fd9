#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace hnls {

enum class Scenario { PlaneWave, Constant, DroppedBit, GaussianOnCarrier, CustomCheckpoint };
enum class SolverMode { Strang, Picard, Both };

const char* to_string(Scenario scenario) noexcept;
const char* to_string(SolverMode mode) noexcept;

/// Flat key = value file. Lines starting with '#' or ';' are comments and
/// [section] headers are ignored. Duplicate keys are rejected.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_key_values(std::istream& is);

struct ScenarioParams {
  /// Carrier amplitude A and wavenumber k.
  double amplitude = 1.0;
  int wavenumber = 1;
  /// Optional second carrier mode.
  double amplitude2 = 0.0;
  int wavenumber2 = 2;
  /// gaussian_on_carrier: v0 = B exp(-x^2 / (2 sigma^2)).
  double bump_amplitude = 1.0;
  double sigma = 1.0;
  /// dropped_bit: chi = 1 on [center - plateau/2, center + plateau/2],
  /// tapering smoothly to 0 over `ramp` on each side.
  double plateau_width = 6.283185307179586;
  double ramp = 3.141592653589793;
  double center = 0.0;
  /// Seeded random perturbation of the carrier: coefficients
  /// noise * (1+|m|)^(-noise_decay) * g.
  double carrier_noise = 0.0;
  double noise_decay = 3.0;
  std::string checkpoint_v;
  std::string checkpoint_w;
};

struct Tolerances {
  /// Outer fraction of the line examined by the boundary monitor.
  double boundary_fraction = 0.05;
  double boundary_mass = 1e-6;
  /// Relative drift limits for the torus mass and energy.
  double torus_mass_drift = 1e-9;
  double torus_energy_drift = 1e-4;
  double envelope = 1e-9;
  double blowup_ceiling = 1e6;
  double blowup_growth = 10.0;
  /// Bound on sup-L^2 distance between Picard and Strang in `both` mode,
  /// added to the Picard quadrature-error estimate.
  double picard_strang = 1e-6;
  /// Plane-wave runs: final L^2 error against the exact solution.
  double plane_wave_error = 1e-6;
};

struct RunConfig {
  double p = 3.0;
  double s_torus = 1.0;
  std::size_t torus_n = 256;
  std::size_t line_n = 4096;
  int line_k = 8;
  double dt = 1e-3;
  double t_end = 1.0;
  Scenario scenario = Scenario::PlaneWave;
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  SolverMode solver_mode = SolverMode::Strang;
  /// Unset means: off for odd integer p, on otherwise.
  std::optional<bool> dealias;
  /// Write a checkpoint every this many steps (0: final state only).
  std::size_t checkpoint_every = 0;
  /// Record a ledger row every this many steps.
  std::size_t ledger_every = 1;
  /// Picard horizon as a fraction of the guaranteed time.
  double picard_fraction = 0.5;
  double c_cal = 0.01;
  ScenarioParams params;
  Tolerances tol;

  bool resolved_dealias() const noexcept;
};

/// Throws InvalidConfig on unknown or malformed keys, missing required keys
/// (p, scenario, dt, t_end) or parameters outside their valid range.
RunConfig parse_run_config(const KeyValues& kv);
RunConfig load_run_config(const std::filesystem::path& path);

/// Every field, defaults included, as sorted key = value lines with doubles
/// at 17 significant digits. Parsing this text yields the same config.
std::string canonical_text(const RunConfig& cfg);

/// FNV-1a 64 of canonical_text.
std::uint64_t config_hash(const RunConfig& cfg);
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// Whether (p, s) satisfies the regularity hypothesis of the global bound:
/// p >= 3 and s > 3/2 for p = 3; s > 5/2 for odd p >= 5; 5/2 < s <= [p] otherwise.
bool global_hypothesis_holds(double p, double s) noexcept;

enum class LabLemma { FractionalChain, Difference, Taylor, Interpolation, All };
const char* to_string(LabLemma lemma) noexcept;

struct LabConfig {
  std::uint64_t seed = 1;
  double p = 3.0;
  LabLemma lemma = LabLemma::All;
  std::size_t samples = 1000;
  double gamma = 2.0;
  /// Sobolev index for the fractional chain rule.
  double s = 1.0;
  /// Interpolation exponent; unset means (p + 3) / 2.
  std::optional<double> q;
  std::size_t grid_n = 64;
  double amplitude = 1.0;
  unsigned threads = 1;
  bool exploratory = false;
  std::string output_dir = "out";
};

/// Required keys: seed, p, lemma.
LabConfig parse_lab_config(const KeyValues& kv);
LabConfig load_lab_config(const std::filesystem::path& path);
std::string canonical_text(const LabConfig& cfg);

}  // namespace hnls
