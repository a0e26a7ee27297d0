#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "mcsa/signal_core.hpp"

namespace mcsa {

// One broken-bar sideband pair to inject: tones at f_f*(1 - 2ks) and
// f_f*(1 + 2ks) with the given amplitudes (relative to the fundamental) and
// phases (radians).
struct SidebandSpec {
  double lower_amplitude = 0.0;
  double upper_amplitude = 0.0;
  double lower_phase = 0.0;
  double upper_phase = 0.0;
};

// Synthetic inverter-fed stator-current recipe: fundamental sine plus
// configured harmonics plus optional broken-bar sideband families plus seeded
// Gaussian noise. Deterministic for a fixed seed.
struct SimConfig {
  double supply_frequency = 23.0;      // Hz
  double fundamental_amplitude = 1.0;
  std::map<int, double> harmonic_amplitudes;  // harmonic index (>= 2) -> relative amplitude
  double slip = 0.0;
  std::map<int, SidebandSpec> broken_bar;     // k -> sideband pair
  double noise_rms = 0.0;              // relative to unit amplitude
  double sample_rate = 1000.0;         // Hz
  double duration = 4.0;               // seconds
  std::uint64_t seed = 1;

  std::size_t sample_count() const;
  double highest_frequency() const;    // largest deterministic tone
  void validate() const;               // throws InvalidParams / NyquistViolation
};

Signal generate(const SimConfig& config);

// Magnitude read-off factor at the nearest one-sided FFT bin for a
// rectangular window: |sin(pi*d)/(n*sin(pi*d/n))| where d is the fractional
// bin offset. 1.0 on exact bins. Used to calibrate preset sideband amplitudes
// so the observed normalized bin values hit their documented targets.
double bin_scalloping_gain(double frequency_hz, double sample_rate, std::size_t n);

// Named configurations mirroring the reference runs:
//   healthy-20hp-{8,10,14,16,18,23}Hz, healthy-40hp-{8,10,14,18,23}Hz,
//   faulty-20hp-23Hz (slip 0.197, sidebands reading 0.47/0.42 normalized).
const std::map<std::string, SimConfig>& presets();

}  // namespace mcsa
