#pragma once

#include <span>
#include <string>
#include <vector>

namespace mcsa {

// Uniformly sampled real current waveform.
struct Signal {
  std::vector<double> samples;  // amperes, arbitrary scale after CT ratio
  double sample_rate = 0.0;     // Hz
  std::string label;            // free-form provenance

  std::size_t size() const { return samples.size(); }
  double duration() const { return static_cast<double>(samples.size()) / sample_rate; }

  // Throws EmptySignal / NonFiniteSample / InvalidParams on violation.
  void validate() const;
};

enum class WindowKind { Rectangular, Hann };

enum class Normalization {
  Raw,              // magnitudes in input units
  FundamentalUnit,  // divided by the largest non-DC peak
};

// Window weights, length n. Hann is the symmetric variant (zero at both ends).
std::vector<double> window_weights(WindowKind kind, std::size_t n);

// One-sided magnitude spectrum. Bin spacing is sample_rate/N; length floor(N/2)+1.
struct Spectrum {
  std::vector<double> frequencies;
  std::vector<double> magnitudes;
  Normalization normalization = Normalization::Raw;

  std::size_t size() const { return frequencies.size(); }
  double bin_spacing() const;
  double max_frequency() const { return frequencies.empty() ? 0.0 : frequencies.back(); }
  std::size_t nearest_bin(double frequency_hz) const;
};

// Magnitude scaling: 2|X_k|/N per one-sided bin, DC and Nyquist unhalved, so a
// unit-amplitude sine on an exact bin reads 1.0. Under FundamentalUnit the
// largest non-DC bin is scaled to exactly 1; an all-zero spectrum is returned
// as Raw since it has no peak to normalize by.
Spectrum compute_spectrum(const Signal& signal,
                          WindowKind window = WindowKind::Rectangular,
                          Normalization normalization = Normalization::FundamentalUnit);

struct FundamentalPeak {
  double frequency = 0.0;
  double magnitude = 0.0;
  bool zero_spectrum = false;  // set when every candidate bin is exactly zero
};

// Largest-magnitude bin inside [band_low, band_high], DC excluded, ties broken
// toward the lower frequency.
FundamentalPeak find_fundamental(const Spectrum& spectrum, double band_low, double band_high);

// sqrt(sum of M_h^2, h = 2..max_harmonic) / M_1, magnitudes taken at the bin
// nearest each h*fundamental (harmonics beyond the spectrum are skipped).
double total_harmonic_distortion(const Spectrum& spectrum, double fundamental_hz,
                                 int max_harmonic);

// Squared magnitude at the listed bins over total squared magnitude, DC excluded.
double sideband_power_fraction(const Spectrum& spectrum, std::span<const double> sideband_hz);

}  // namespace mcsa
