#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hnls/field.hpp"
#include "hnls/grid.hpp"
#include "hnls/nonlinearity.hpp"

namespace hnls {

/// Random fields with Fourier coefficients amplitude * (1+|k|)^(-gamma) * g,
/// g standard complex Gaussian. Modes are drawn in order of increasing |k|,
/// so the same (seed, index, stream) on a grid twice as fine shares every
/// low mode. Line fields are multiplied by a Gaussian window of width L/4.
class FieldSampler {
 public:
  FieldSampler(std::uint64_t seed, Grid grid, double gamma, double amplitude = 1.0);

  std::uint64_t seed() const noexcept { return seed_; }
  const Grid& grid() const noexcept { return grid_; }
  double gamma() const noexcept { return gamma_; }
  double amplitude() const noexcept { return amplitude_; }

  FieldSampler with_grid(Grid grid) const;
  FieldSampler with_amplitude(double amplitude) const;

  /// Bit-identical for identical sampler state and arguments.
  ComplexField draw(std::uint64_t index, std::uint32_t stream) const;
  std::uint64_t sub_seed(std::uint64_t index, std::uint32_t stream) const noexcept;

 private:
  std::uint64_t seed_;
  Grid grid_;
  double gamma_;
  double amplitude_;
};

struct EstimateReport {
  std::string lemma;
  std::size_t samples = 0;
  double max_ratio = 0.0;
  /// 0.5, 0.9, 0.99 quantiles of the per-sample ratios
  std::array<double, 3> ratio_quantiles{};
  double p = 0.0;
  /// Sobolev index for the fractional chain rule; the exponent q for the
  /// interpolation inequality; 0 otherwise.
  double s = 0.0;
  double gamma = 0.0;
  /// Only meaningful for parameter-free inequalities.
  bool violated = false;
  /// Grid points (or samples) skipped because the right-hand side was < 1e-300.
  std::size_t skipped = 0;
  /// max_ratio over the first half of the samples; max_ratio / this measures
  /// how much the fitted constant moved when the sample count doubled.
  double max_ratio_first_half = 0.0;
};

struct LabOptions {
  std::size_t samples = 1000;
  /// Worker threads; results do not depend on this.
  unsigned threads = 1;
  /// Allow parameters outside a lemma's hypotheses (reports are then
  /// labelled exploratory).
  bool exploratory = false;
};

/// || |f|^(p-1) f ||_{H^s} / (||f||_inf^(p-1) ||f||_{H^s}) over torus samples.
/// Requires 0 <= s <= [p], or any s >= 0 for odd integer p.
EstimateReport verify_fractional_chain(const FieldSampler& sampler, const Power& p, double s,
                                       const LabOptions& options);

/// Pointwise |G| / (|v1-v2| |(v1,v2,w)|^(p-1)) and the matching ratio for
/// the x-derivative of G. Returns {value, derivative} reports.
std::array<EstimateReport, 2> verify_difference_lemma(const FieldSampler& sampler, const Power& p,
                                                      const LabOptions& options);

/// The three second-order remainder estimates, p >= 3.
std::array<EstimateReport, 3> verify_taylor_lemma(const FieldSampler& sampler, const Power& p,
                                                  const LabOptions& options);

/// ||v||_q^q <= ||v||_2^(2(p-q+1)/(p-1)) ||v||_{p+1}^((p+1)(q-2)/(p-1)),
/// constant exactly one; violated is set if any ratio exceeds 1 + 1e-12.
EstimateReport verify_interpolation(const FieldSampler& sampler, const Power& p, double q,
                                    const LabOptions& options);

inline constexpr double kInterpolationSlack = 1e-12;

/// lemma,p,s,gamma,samples,max_ratio,q50,q90,q99,violated
void write_reports_csv(std::ostream& os, std::span<const EstimateReport> reports);
const char* report_csv_header() noexcept;

}  // namespace hnls
