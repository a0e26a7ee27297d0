#include "mcsa/signal_core.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "mcsa/errors.hpp"
#include "mcsa/fft.hpp"

namespace mcsa {

namespace {
constexpr double kPi = std::numbers::pi;
}

void Signal::validate() const {
  if (samples.size() < 2)
    throw Error(Errc::EmptySignal,
                "signal has " + std::to_string(samples.size()) + " sample(s), need at least 2");
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate))
    throw Error(Errc::InvalidParams, "sample_rate must be positive and finite");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i]))
      throw Error(Errc::NonFiniteSample, "sample " + std::to_string(i) + " is not finite");
  }
}

std::vector<double> window_weights(WindowKind kind, std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (kind == WindowKind::Hann && n > 1) {
    for (std::size_t i = 0; i < n; ++i)
      w[i] = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(i) /
                                   static_cast<double>(n - 1)));
  }
  return w;
}

double Spectrum::bin_spacing() const {
  if (frequencies.size() < 2) return 0.0;
  return frequencies[1] - frequencies[0];
}

std::size_t Spectrum::nearest_bin(double frequency_hz) const {
  const double spacing = bin_spacing();
  if (spacing <= 0.0) return 0;
  const double k = frequency_hz / spacing;
  auto idx = static_cast<long long>(std::llround(k));
  idx = std::clamp<long long>(idx, 0, static_cast<long long>(frequencies.size()) - 1);
  return static_cast<std::size_t>(idx);
}

Spectrum compute_spectrum(const Signal& signal, WindowKind window, Normalization normalization) {
  signal.validate();
  const std::size_t n = signal.samples.size();

  const std::vector<double> w = window_weights(window, n);
  std::vector<std::complex<double>> data(n);
  for (std::size_t i = 0; i < n; ++i) data[i] = std::complex<double>(w[i] * signal.samples[i], 0.0);

  const std::vector<std::complex<double>> x = fft::dft(data);

  const std::size_t bins = n / 2 + 1;
  Spectrum spec;
  spec.frequencies.resize(bins);
  spec.magnitudes.resize(bins);
  spec.normalization = Normalization::Raw;

  const double df = signal.sample_rate / static_cast<double>(n);
  const bool even = (n % 2 == 0);
  for (std::size_t k = 0; k < bins; ++k) {
    spec.frequencies[k] = df * static_cast<double>(k);
    const bool unhalved = (k == 0) || (even && k == bins - 1);  // DC and Nyquist
    const double scale = (unhalved ? 1.0 : 2.0) / static_cast<double>(n);
    spec.magnitudes[k] = scale * std::abs(x[k]);
  }

  if (normalization == Normalization::FundamentalUnit) {
    double peak = 0.0;
    std::size_t peak_idx = 0;
    for (std::size_t k = 1; k < bins; ++k) {
      if (spec.magnitudes[k] > peak) {
        peak = spec.magnitudes[k];
        peak_idx = k;
      }
    }
    if (peak > 0.0) {
      for (auto& m : spec.magnitudes) m /= peak;
      spec.magnitudes[peak_idx] = 1.0;  // exact, independent of rounding
      spec.normalization = Normalization::FundamentalUnit;
    }
    // an all-zero spectrum has no peak to scale by and stays Raw
  }
  return spec;
}

FundamentalPeak find_fundamental(const Spectrum& spectrum, double band_low, double band_high) {
  if (!(band_low < band_high))
    throw Error(Errc::BandOutOfRange, "band low must be below band high");
  if (band_low < 0.0 || band_high > spectrum.max_frequency())
    throw Error(Errc::BandOutOfRange,
                "band [" + std::to_string(band_low) + ", " + std::to_string(band_high) +
                    "] outside spectrum range [0, " + std::to_string(spectrum.max_frequency()) + "]");

  FundamentalPeak best;
  bool seen = false;
  for (std::size_t k = 1; k < spectrum.size(); ++k) {  // DC excluded
    const double f = spectrum.frequencies[k];
    if (f < band_low || f > band_high) continue;
    if (!seen || spectrum.magnitudes[k] > best.magnitude) {  // ties keep the lower frequency
      best.frequency = f;
      best.magnitude = spectrum.magnitudes[k];
      seen = true;
    }
  }
  if (!seen) throw Error(Errc::EmptyBand, "no non-DC bins inside the band");
  best.zero_spectrum = (best.magnitude == 0.0);
  return best;
}

double total_harmonic_distortion(const Spectrum& spectrum, double fundamental_hz,
                                 int max_harmonic) {
  if (max_harmonic < 2) throw Error(Errc::InvalidParams, "max_harmonic must be >= 2");
  const double m1 = spectrum.magnitudes[spectrum.nearest_bin(fundamental_hz)];
  if (m1 == 0.0)
    throw Error(Errc::FundamentalNotFound, "zero magnitude at the fundamental bin");

  double sum_sq = 0.0;
  for (int h = 2; h <= max_harmonic; ++h) {
    const double f = fundamental_hz * h;
    if (f > spectrum.max_frequency()) break;
    const double m = spectrum.magnitudes[spectrum.nearest_bin(f)];
    sum_sq += m * m;
  }
  return std::sqrt(sum_sq) / m1;
}

double sideband_power_fraction(const Spectrum& spectrum, std::span<const double> sideband_hz) {
  for (double f : sideband_hz) {
    if (f < 0.0 || f > spectrum.max_frequency())
      throw Error(Errc::BandOutOfRange, std::to_string(f) + " Hz outside spectrum range");
  }
  double total = 0.0;
  for (std::size_t k = 1; k < spectrum.size(); ++k)
    total += spectrum.magnitudes[k] * spectrum.magnitudes[k];
  if (total == 0.0) return 0.0;

  // distinct bins only, so duplicate listings do not double-count
  std::vector<std::size_t> bins;
  bins.reserve(sideband_hz.size());
  for (double f : sideband_hz) {
    const std::size_t b = spectrum.nearest_bin(f);
    if (b == 0) continue;
    if (std::find(bins.begin(), bins.end(), b) == bins.end()) bins.push_back(b);
  }
  double in_bins = 0.0;
  for (std::size_t b : bins) in_bins += spectrum.magnitudes[b] * spectrum.magnitudes[b];
  return in_bins / total;
}

}  // namespace mcsa
