#pragma once

// Shared helpers for the test suites. The DFT here is a deliberate brute-force
// O(N^2) sum so library results are checked against an independent route.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "mcsa/signal_core.hpp"

namespace testutil {

using cplx = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

inline std::vector<cplx> brute_dft(std::span<const cplx> x, bool inverse = false) {
  const std::size_t n = x.size();
  std::vector<cplx> out(n, cplx(0.0, 0.0));
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j)
      acc += x[j] * std::polar(1.0, sign * 2.0 * kPi * static_cast<double>(k) *
                                        static_cast<double>(j) / static_cast<double>(n));
    out[k] = acc;
  }
  return out;
}

inline double rel_l2(std::span<const cplx> got, std::span<const cplx> want) {
  double diff = 0.0;
  double ref = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    diff += std::norm(got[i] - want[i]);
    ref += std::norm(want[i]);
  }
  return ref > 0.0 ? std::sqrt(diff / ref) : std::sqrt(diff);
}

inline double norm_l2(std::span<const cplx> x) {
  double acc = 0.0;
  for (const cplx& v : x) acc += std::norm(v);
  return std::sqrt(acc);
}

// Sum of sinusoids sampled at fs for n samples.
struct Tone {
  double frequency;
  double amplitude;
  double phase = 0.0;
};

inline mcsa::Signal make_signal(std::span<const Tone> tones, double fs, std::size_t n,
                                const std::string& label = "test") {
  mcsa::Signal s;
  s.sample_rate = fs;
  s.label = label;
  s.samples.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / fs;
    for (const Tone& tone : tones)
      s.samples[i] += tone.amplitude * std::sin(2.0 * kPi * tone.frequency * t + tone.phase);
  }
  return s;
}

inline std::vector<cplx> random_complex(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<cplx> out(n);
  for (auto& v : out) v = cplx(dist(rng), dist(rng));
  return out;
}

inline std::vector<double> random_real(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& v : out) v = dist(rng);
  return out;
}

}  // namespace testutil
