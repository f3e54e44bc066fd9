#include "hnls/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <thread>

#include "hnls/errors.hpp"
#include "hnls/spectral.hpp"

namespace hnls {
namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr double kSkipBelow = 1e-300;

template <typename Fn>
void for_each_sample(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) fn(i);
    });
  }
}

double quantile(std::vector<double> sorted_values, double q) {
  if (sorted_values.empty()) return 0.0;
  std::sort(sorted_values.begin(), sorted_values.end());
  const auto n = sorted_values.size();
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  return sorted_values[rank - 1];
}

struct SampleRatio {
  double ratio = 0.0;
  std::size_t skipped = 0;
};

EstimateReport summarize(std::string lemma, const std::vector<SampleRatio>& per_sample,
                         double p, double s, double gamma) {
  EstimateReport r;
  r.lemma = std::move(lemma);
  r.samples = per_sample.size();
  r.p = p;
  r.s = s;
  r.gamma = gamma;
  std::vector<double> ratios;
  ratios.reserve(per_sample.size());
  for (std::size_t i = 0; i < per_sample.size(); ++i) {
    const auto& x = per_sample[i];
    ratios.push_back(x.ratio);
    r.skipped += x.skipped;
    r.max_ratio = std::max(r.max_ratio, x.ratio);
    if (i < (per_sample.size() + 1) / 2) r.max_ratio_first_half = std::max(r.max_ratio_first_half, x.ratio);
  }
  r.ratio_quantiles = {quantile(ratios, 0.5), quantile(ratios, 0.9), quantile(ratios, 0.99)};
  return r;
}

void require_samples(const LabOptions& options) {
  if (options.samples == 0) throw InvalidParameter("lab needs at least one sample");
}

ComplexField vanish_at_first_point(const ComplexField& f) {
  std::vector<Complex> values(f.values().begin(), f.values().end());
  const Complex at0 = values.front();
  for (auto& z : values) z -= at0;
  return ComplexField(f.grid(), std::move(values));
}

ComplexField scaled(const ComplexField& f, double factor) { return Complex(factor) * f; }

ComplexField plus_constant(const ComplexField& f, Complex c) {
  std::vector<Complex> values(f.values().begin(), f.values().end());
  for (auto& z : values) z += c;
  return ComplexField(f.grid(), std::move(values));
}

double euclid(Complex a, Complex b, Complex c) {
  return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c));
}

// d/dx (|z|^(p-1) z) = |z|^(p-1) z_x + (p-1) |z|^(p-3) Re(conj(z) z_x) z
Complex power_derivative(Complex z, Complex zx, double p) {
  const double m2 = std::norm(z);
  if (m2 == 0.0) return 0.0;
  return modulus_power(m2, p - 1.0) * zx +
         (p - 1.0) * modulus_power(m2, p - 3.0) * (std::conj(z) * zx).real() * z;
}

}  // namespace

FieldSampler::FieldSampler(std::uint64_t seed, Grid grid, double gamma, double amplitude)
    : seed_(seed), grid_(std::move(grid)), gamma_(gamma), amplitude_(amplitude) {
  if (!(gamma >= 0.0)) throw InvalidParameter("spectral decay must be >= 0");
  if (!std::isfinite(amplitude)) throw InvalidParameter("amplitude must be finite");
}

FieldSampler FieldSampler::with_grid(Grid grid) const {
  return FieldSampler(seed_, std::move(grid), gamma_, amplitude_);
}

FieldSampler FieldSampler::with_amplitude(double amplitude) const {
  return FieldSampler(seed_, grid_, gamma_, amplitude);
}

std::uint64_t FieldSampler::sub_seed(std::uint64_t index, std::uint32_t stream) const noexcept {
  return splitmix64(splitmix64(seed_ ^ splitmix64(index)) + stream);
}

ComplexField FieldSampler::draw(std::uint64_t index, std::uint32_t stream) const {
  std::mt19937_64 rng(sub_seed(index, stream));
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto n = grid_size(grid_);
  const long half = static_cast<long>(n / 2);
  std::vector<Complex> coeffs(n);
  auto set_mode = [&](long m) {
    const double re = normal(rng);
    const double im = normal(rng);
    const double weight = amplitude_ * std::pow(1.0 + std::abs(static_cast<double>(m)), -gamma_) /
                          std::sqrt(2.0);
    const auto slot = static_cast<std::size_t>(m >= 0 ? m : m + static_cast<long>(n));
    coeffs[slot] = weight * Complex(re, im);
  };
  set_mode(0);
  for (long m = 1; m < half; ++m) {
    set_mode(m);
    set_mode(-m);
  }
  set_mode(-half);
  auto values = detail::natural_to_values(grid_, std::move(coeffs));
  if (!is_torus(grid_)) {
    // Undo the line normalization so amplitudes match the torus convention,
    // then localize.
    const auto& line = std::get<LineGrid>(grid_);
    const double rescale = static_cast<double>(n) * line.dx();
    const double width = 0.25 * line.half_length();
    for (std::size_t j = 0; j < n; ++j) {
      const double x = line.x(j);
      values[j] *= rescale * std::exp(-0.5 * x * x / (width * width));
    }
  }
  return ComplexField(grid_, std::move(values));
}

EstimateReport verify_fractional_chain(const FieldSampler& sampler, const Power& p, double s,
                                       const LabOptions& options) {
  require_samples(options);
  if (!is_torus(sampler.grid())) throw Unsupported("fractional chain rule is a torus estimate");
  const bool in_range = s >= 0.0 && (p.is_odd_integer() || s <= p.floor_p());
  if (!in_range && !options.exploratory) {
    throw InvalidParameter("fractional chain rule needs 0 <= s <= [p] (any s >= 0 for odd p)");
  }
  if (s < 0.0) throw InvalidParameter("Sobolev index must be >= 0");
  std::vector<SampleRatio> out(options.samples);
  for_each_sample(options.samples, options.threads, [&](std::size_t i) {
    auto f = sampler.draw(i, 0);
    switch (i % 3) {
      case 1: f = plus_constant(f, lp_norm(f, kInfinity)); break;
      case 2: f = vanish_at_first_point(f); break;
      default: break;
    }
    const double linf = lp_norm(f, kInfinity);
    const double rhs = std::pow(linf, p.value() - 1.0) * sobolev_norm(f, s);
    if (rhs < kSkipBelow) {
      out[i].skipped = 1;
      return;
    }
    out[i].ratio = sobolev_norm(n_p(f, p), s) / rhs;
  });
  auto report = summarize(in_range ? "fractional_chain" : "fractional_chain_exploratory", out,
                          p.value(), s, sampler.gamma());
  return report;
}

std::array<EstimateReport, 2> verify_difference_lemma(const FieldSampler& sampler, const Power& p,
                                                      const LabOptions& options) {
  require_samples(options);
  const double pv = p.value();
  std::vector<SampleRatio> value_ratio(options.samples), deriv_ratio(options.samples);
  for_each_sample(options.samples, options.threads, [&](std::size_t i) {
    auto v1 = sampler.draw(i, 0);
    auto v2 = sampler.draw(i, 1);
    auto w = sampler.draw(i, 2);
    switch (i % 4) {
      case 1: v2 = v1 + scaled(sampler.draw(i, 3), 1e-3); break;
      case 2: w = scaled(w, 1e-3); break;
      case 3: w = vanish_at_first_point(w); break;
      default: break;
    }
    const auto v1x = derivative(v1);
    const auto v2x = derivative(v2);
    const auto wx = derivative(w);
    SampleRatio val, der;
    for (std::size_t j = 0; j < v1.size(); ++j) {
      const Complex a = v1[j] + w[j];
      const Complex b = v2[j] + w[j];
      const double size = euclid(v1[j], v2[j], w[j]);
      const double diff = std::abs(v1[j] - v2[j]);

      const double lhs = std::abs(power_nonlinearity(a, pv) - power_nonlinearity(b, pv));
      const double rhs = diff * modulus_power(size * size, pv - 1.0);
      if (rhs < kSkipBelow) {
        ++val.skipped;
      } else {
        val.ratio = std::max(val.ratio, lhs / rhs);
      }

      const Complex ax = v1x[j] + wx[j];
      const Complex bx = v2x[j] + wx[j];
      const double lhs_x = std::abs(power_derivative(a, ax, pv) - power_derivative(b, bx, pv));
      const double rhs_x =
          std::abs(v1x[j] - v2x[j]) * modulus_power(size * size, pv - 1.0) +
          diff * euclid(v1x[j], v2x[j], wx[j]) * modulus_power(size * size, pv - 2.0);
      if (rhs_x < kSkipBelow) {
        ++der.skipped;
      } else {
        der.ratio = std::max(der.ratio, lhs_x / rhs_x);
      }
    }
    value_ratio[i] = val;
    deriv_ratio[i] = der;
  });
  return {summarize("difference", value_ratio, pv, 0.0, sampler.gamma()),
          summarize("difference_derivative", deriv_ratio, pv, 0.0, sampler.gamma())};
}

std::array<EstimateReport, 3> verify_taylor_lemma(const FieldSampler& sampler, const Power& p,
                                                  const LabOptions& options) {
  require_samples(options);
  if (p.value() < 3.0) throw InvalidParameter("Taylor remainder estimates require p >= 3");
  const double pv = p.value();
  std::array<std::vector<SampleRatio>, 3> ratios;
  for (auto& r : ratios) r.resize(options.samples);
  for_each_sample(options.samples, options.threads, [&](std::size_t i) {
    auto v = sampler.draw(i, 0);
    auto w = sampler.draw(i, 1);
    switch (i % 4) {
      case 1: v = scaled(v, 1e-3); break;
      case 2: w = scaled(w, 1e-3); break;
      case 3: w = vanish_at_first_point(w); break;
      default: break;
    }
    std::array<SampleRatio, 3> local{};
    for (std::size_t j = 0; j < v.size(); ++j) {
      const auto rem = taylor_remainders_at(v[j], w[j], pv);
      const double av = std::abs(v[j]);
      const double aw = std::abs(w[j]);
      const double v2 = av * av;
      const double rhs[3] = {
          v2 * (modulus_power(aw * aw, pv - 3.0) + modulus_power(v2, pv - 3.0)),
          v2 * aw * (modulus_power(aw * aw, pv - 2.0) + modulus_power(v2, pv - 2.0)),
          v2 * (modulus_power(aw * aw, pv - 2.0) + modulus_power(v2, pv - 2.0)),
      };
      const double lhs[3] = {std::abs(rem.first), std::abs(rem.second), std::abs(rem.third)};
      for (int e = 0; e < 3; ++e) {
        if (rhs[e] < kSkipBelow) {
          ++local[e].skipped;
        } else {
          local[e].ratio = std::max(local[e].ratio, lhs[e] / rhs[e]);
        }
      }
    }
    for (int e = 0; e < 3; ++e) ratios[e][i] = local[e];
  });
  return {summarize("taylor_1", ratios[0], pv, 0.0, sampler.gamma()),
          summarize("taylor_2", ratios[1], pv, 0.0, sampler.gamma()),
          summarize("taylor_3", ratios[2], pv, 0.0, sampler.gamma())};
}

EstimateReport verify_interpolation(const FieldSampler& sampler, const Power& p, double q,
                                    const LabOptions& options) {
  require_samples(options);
  const double pv = p.value();
  if (!(q >= 2.0 && q <= pv + 1.0)) {
    throw InvalidParameter("interpolation exponent must satisfy 2 <= q <= p+1");
  }
  const double a = 2.0 * (pv - q + 1.0) / (pv - 1.0);
  const double b = (pv + 1.0) * (q - 2.0) / (pv - 1.0);
  std::vector<SampleRatio> out(options.samples);
  for_each_sample(options.samples, options.threads, [&](std::size_t i) {
    auto f = sampler.draw(i, 0);
    switch (i % 3) {
      case 1: {
        std::vector<Complex> values(f.values().begin(), f.values().end());
        for (std::size_t j = 0; j < values.size(); ++j) {
          values[j] *= std::exp(8.0 * (std::cos(grid_point(f.grid(), j)) - 1.0));
        }
        f = ComplexField(f.grid(), std::move(values));
        break;
      }
      case 2: f = plus_constant(f, lp_norm(f, kInfinity)); break;
      default: break;
    }
    const double lhs = std::pow(lp_norm(f, q), q);
    const double rhs = std::pow(lp_norm(f, 2.0), a) * std::pow(lp_norm(f, pv + 1.0), b);
    if (rhs < kSkipBelow) {
      out[i].skipped = 1;
      return;
    }
    out[i].ratio = lhs / rhs;
  });
  auto report = summarize("interpolation", out, pv, q, sampler.gamma());
  report.violated = report.max_ratio > 1.0 + kInterpolationSlack;
  return report;
}

const char* report_csv_header() noexcept {
  return "lemma,p,s,gamma,samples,max_ratio,q50,q90,q99,violated";
}

void write_reports_csv(std::ostream& os, std::span<const EstimateReport> reports) {
  os << report_csv_header() << '\n';
  char buf[32];
  auto num = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
  };
  for (const auto& r : reports) {
    os << r.lemma << ',' << num(r.p) << ',' << num(r.s) << ',' << num(r.gamma) << ','
       << r.samples << ',' << num(r.max_ratio) << ',' << num(r.ratio_quantiles[0]) << ','
       << num(r.ratio_quantiles[1]) << ',' << num(r.ratio_quantiles[2]) << ','
       << (r.violated ? "true" : "false") << '\n';
  }
}

}  // namespace hnls
