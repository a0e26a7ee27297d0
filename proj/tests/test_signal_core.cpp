#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "mcsa/errors.hpp"
#include "mcsa/signal_core.hpp"
#include "test_util.hpp"

using mcsa::Errc;
using mcsa::Error;
using mcsa::Normalization;
using mcsa::Signal;
using mcsa::Spectrum;
using mcsa::WindowKind;
using testutil::Tone;
using testutil::cplx;
using testutil::make_signal;

namespace {

bool throws_code(Errc code, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_CASE("signal validation") {
  Signal s{{1.0}, 1000.0, ""};
  CHECK(throws_code(Errc::EmptySignal, [&] { s.validate(); }));

  s.samples = {1.0, 2.0, std::numeric_limits<double>::quiet_NaN()};
  CHECK(throws_code(Errc::NonFiniteSample, [&] { s.validate(); }));

  s.samples = {1.0, 2.0};
  s.sample_rate = 0.0;
  CHECK(throws_code(Errc::InvalidParams, [&] { s.validate(); }));

  s.sample_rate = 1000.0;
  CHECK_NOTHROW(s.validate());
}

TEST_CASE("window weights") {
  const auto rect = mcsa::window_weights(WindowKind::Rectangular, 8);
  for (double w : rect) CHECK(w == 1.0);

  const auto hann = mcsa::window_weights(WindowKind::Hann, 9);
  CHECK(hann.front() == 0.0);
  CHECK(hann.back() == 0.0);
  for (std::size_t i = 0; i < hann.size(); ++i)
    CHECK(hann[i] == doctest::Approx(hann[hann.size() - 1 - i]).epsilon(1e-15));
  CHECK(hann[4] == doctest::Approx(1.0));
}

TEST_CASE("pure sine lands on one bin") {
  const Tone tone{23.0, 1.0};
  const Signal s = make_signal({&tone, 1}, 1000.0, 1000);
  const Spectrum spec = mcsa::compute_spectrum(s, WindowKind::Rectangular, Normalization::Raw);

  REQUIRE(spec.size() == 501);
  const std::size_t peak = spec.nearest_bin(23.0);
  CHECK(spec.frequencies[peak] == doctest::Approx(23.0));
  CHECK(spec.magnitudes[peak] == doctest::Approx(1.0).epsilon(1e-9));
  for (std::size_t k = 0; k < spec.size(); ++k) {
    if (k == peak) continue;
    CHECK(spec.magnitudes[k] / spec.magnitudes[peak] < 1e-6);
  }
}

TEST_CASE("three-tone spectrum reproduces the documented normalized peaks") {
  const std::vector<Tone> tones{{23.0, 1.0}, {14.0, 0.47}, {32.0, 0.42}};
  const Signal s = make_signal(tones, 1000.0, 1000);
  const Spectrum spec = mcsa::compute_spectrum(s, WindowKind::Rectangular,
                                               Normalization::FundamentalUnit);

  CHECK(spec.magnitudes[spec.nearest_bin(23.0)] == 1.0);  // exact by construction
  CHECK(spec.magnitudes[spec.nearest_bin(14.0)] == doctest::Approx(0.47).epsilon(1e-6));
  CHECK(spec.magnitudes[spec.nearest_bin(32.0)] == doctest::Approx(0.42).epsilon(1e-6));
}

TEST_CASE("zero signal produces a zero spectrum without error") {
  Signal s;
  s.samples.assign(16, 0.0);
  s.sample_rate = 1000.0;
  const Spectrum spec = mcsa::compute_spectrum(s, WindowKind::Rectangular, Normalization::Raw);
  for (double m : spec.magnitudes) CHECK(m == 0.0);

  // FundamentalUnit has no peak to scale by; result stays Raw and zero
  const Spectrum unit =
      mcsa::compute_spectrum(s, WindowKind::Rectangular, Normalization::FundamentalUnit);
  CHECK(unit.normalization == Normalization::Raw);
  for (double m : unit.magnitudes) CHECK(m == 0.0);
}

TEST_CASE("spectrum axis is uniform") {
  std::mt19937_64 rng(7);
  const Signal s{testutil::random_real(333, rng), 777.0, "random"};
  const Spectrum spec = mcsa::compute_spectrum(s, WindowKind::Hann, Normalization::Raw);
  REQUIRE(spec.frequencies.size() == spec.magnitudes.size());
  const double df = spec.bin_spacing();
  for (std::size_t k = 1; k < spec.size(); ++k) {
    const double step = spec.frequencies[k] - spec.frequencies[k - 1];
    CHECK(std::abs(step - df) <= 1e-9 * df);
  }
}

TEST_CASE("parseval holds for both windows across lengths") {
  std::mt19937_64 rng(42);
  for (std::size_t n : {16u, 33u, 100u, 1000u, 2048u, 4096u}) {
    for (WindowKind window : {WindowKind::Rectangular, WindowKind::Hann}) {
      const Signal s{testutil::random_real(n, rng), 1000.0, "parseval"};
      const Spectrum spec = mcsa::compute_spectrum(s, window, Normalization::Raw);

      const auto w = mcsa::window_weights(window, n);
      double time_energy = 0.0;
      for (std::size_t i = 0; i < n; ++i) time_energy += w[i] * s.samples[i] * w[i] * s.samples[i];

      // undo the one-sided scaling to recover the two-sided |X_k|^2 sum
      double freq_energy = 0.0;
      const bool even = (n % 2 == 0);
      for (std::size_t k = 0; k < spec.size(); ++k) {
        const bool unhalved = (k == 0) || (even && k == spec.size() - 1);
        const double xk = spec.magnitudes[k] * static_cast<double>(n) / (unhalved ? 1.0 : 2.0);
        freq_energy += (unhalved ? 1.0 : 2.0) * xk * xk;
      }
      freq_energy /= static_cast<double>(n);

      CAPTURE(n);
      CHECK(std::abs(freq_energy - time_energy) <= 1e-9 * time_energy);
    }
  }
}

TEST_CASE("spectrum is linear in the input under Raw normalization") {
  std::mt19937_64 rng(11);
  const std::vector<double> base = testutil::random_real(256, rng);
  const double scale = 3.7;
  Signal s1{base, 1000.0, "x"};
  Signal s2 = s1;
  for (auto& v : s2.samples) v *= scale;

  const Spectrum a = mcsa::compute_spectrum(s1, WindowKind::Rectangular, Normalization::Raw);
  const Spectrum b = mcsa::compute_spectrum(s2, WindowKind::Rectangular, Normalization::Raw);
  for (std::size_t k = 0; k < a.size(); ++k)
    CHECK(std::abs(b.magnitudes[k] - scale * a.magnitudes[k]) <=
          1e-12 * std::max(1.0, scale * a.magnitudes[k]));
}

TEST_CASE("fundamental-unit normalization is idempotent in effect") {
  const std::vector<Tone> tones{{23.0, 1.0}, {14.0, 0.47}, {32.0, 0.42}};
  const Signal s = make_signal(tones, 1000.0, 1000);
  const Spectrum spec =
      mcsa::compute_spectrum(s, WindowKind::Rectangular, Normalization::FundamentalUnit);

  double peak = 0.0;
  for (std::size_t k = 1; k < spec.size(); ++k) peak = std::max(peak, spec.magnitudes[k]);
  REQUIRE(peak > 0.0);
  for (std::size_t k = 0; k < spec.size(); ++k)
    CHECK(std::abs(spec.magnitudes[k] / peak - spec.magnitudes[k]) <= 1e-12);
}

TEST_CASE("find_fundamental on the three-tone spectrum") {
  const std::vector<Tone> tones{{23.0, 1.0}, {14.0, 0.47}, {32.0, 0.42}};
  const Signal s = make_signal(tones, 1000.0, 1000);
  const Spectrum spec =
      mcsa::compute_spectrum(s, WindowKind::Rectangular, Normalization::FundamentalUnit);

  const auto peak = mcsa::find_fundamental(spec, 5.0, 100.0);
  CHECK(peak.frequency == doctest::Approx(23.0));
  CHECK(peak.magnitude == 1.0);
  CHECK_FALSE(peak.zero_spectrum);
}

TEST_CASE("find_fundamental degenerate and error cases") {
  Signal zero;
  zero.samples.assign(16, 0.0);
  zero.sample_rate = 1000.0;
  const Spectrum spec = mcsa::compute_spectrum(zero, WindowKind::Rectangular, Normalization::Raw);

  SUBCASE("zero spectrum flags and reports the first bin in band") {
    const auto peak = mcsa::find_fundamental(spec, 5.0, 100.0);
    CHECK(peak.zero_spectrum);
    CHECK(peak.magnitude == 0.0);
    CHECK(peak.frequency == doctest::Approx(62.5));  // first non-DC bin at 1000/16 spacing
  }
  SUBCASE("band beyond Nyquist") {
    CHECK(throws_code(Errc::BandOutOfRange, [&] { mcsa::find_fundamental(spec, 2000.0, 3000.0); }));
  }
  SUBCASE("band between bins") {
    CHECK(throws_code(Errc::EmptyBand, [&] { mcsa::find_fundamental(spec, 10.0, 20.0); }));
  }
  SUBCASE("inverted band") {
    CHECK(throws_code(Errc::BandOutOfRange, [&] { mcsa::find_fundamental(spec, 100.0, 5.0); }));
  }
}

TEST_CASE("find_fundamental ties break toward the lower frequency") {
  Spectrum spec;
  for (int k = 0; k < 10; ++k) {
    spec.frequencies.push_back(k * 10.0);
    spec.magnitudes.push_back(0.1);
  }
  spec.magnitudes[3] = 1.0;
  spec.magnitudes[7] = 1.0;
  const auto peak = mcsa::find_fundamental(spec, 0.0, 90.0);
  CHECK(peak.frequency == 30.0);
}

TEST_CASE("find_fundamental agrees with an exhaustive scan on random spectra") {
  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> mag(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    Spectrum spec;
    const std::size_t bins = 32;
    for (std::size_t k = 0; k < bins; ++k) {
      spec.frequencies.push_back(static_cast<double>(k));
      spec.magnitudes.push_back(mag(rng));
    }
    const double lo = 1.0, hi = 30.0;
    const auto got = mcsa::find_fundamental(spec, lo, hi);

    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t k = 1; k < bins; ++k) {
      if (spec.frequencies[k] < lo || spec.frequencies[k] > hi) continue;
      if (spec.magnitudes[k] > best_mag) {
        best_mag = spec.magnitudes[k];
        best = k;
      }
    }
    CHECK(got.frequency == spec.frequencies[best]);
    CHECK(got.magnitude == spec.magnitudes[best]);
  }
}

TEST_CASE("thd") {
  SUBCASE("pure sine has none") {
    const Tone tone{23.0, 1.0};
    const Signal s = make_signal({&tone, 1}, 1000.0, 1000);
    const Spectrum spec = mcsa::compute_spectrum(s, WindowKind::Rectangular, Normalization::Raw);
    CHECK(mcsa::total_harmonic_distortion(spec, 23.0, 5) < 1e-6);
  }
  SUBCASE("two-tone ratio") {
    const std::vector<Tone> tones{{50.0, 1.0}, {150.0, 0.1}};
    const Signal s = make_signal(tones, 1000.0, 1000);
    const Spectrum spec = mcsa::compute_spectrum(s, WindowKind::Rectangular, Normalization::Raw);
    CHECK(mcsa::total_harmonic_distortion(spec, 50.0, 5) == doctest::Approx(0.1).epsilon(1e-6));
  }
  SUBCASE("zero signal has no fundamental") {
    Signal zero;
    zero.samples.assign(64, 0.0);
    zero.sample_rate = 1000.0;
    const Spectrum spec = mcsa::compute_spectrum(zero, WindowKind::Rectangular, Normalization::Raw);
    CHECK(throws_code(Errc::FundamentalNotFound,
                      [&] { mcsa::total_harmonic_distortion(spec, 50.0, 5); }));
  }
  SUBCASE("harmonics beyond Nyquist are skipped") {
    const Tone tone{400.0, 1.0};
    const Signal s = make_signal({&tone, 1}, 1000.0, 1000);
    const Spectrum spec = mcsa::compute_spectrum(s, WindowKind::Rectangular, Normalization::Raw);
    CHECK(mcsa::total_harmonic_distortion(spec, 400.0, 5) < 1e-6);
  }
  SUBCASE("max_harmonic below 2 is invalid") {
    const Tone tone{50.0, 1.0};
    const Signal s = make_signal({&tone, 1}, 1000.0, 1000);
    const Spectrum spec = mcsa::compute_spectrum(s, WindowKind::Rectangular, Normalization::Raw);
    CHECK(throws_code(Errc::InvalidParams,
                      [&] { mcsa::total_harmonic_distortion(spec, 50.0, 1); }));
  }
}

TEST_CASE("sideband power fraction") {
  const std::vector<Tone> tones{{23.0, 1.0}, {14.0, 0.47}, {32.0, 0.42}};
  const Signal s = make_signal(tones, 1000.0, 1000);
  const Spectrum spec =
      mcsa::compute_spectrum(s, WindowKind::Rectangular, Normalization::FundamentalUnit);

  SUBCASE("documented three-tone value") {
    const std::vector<double> sidebands{14.0, 32.0};
    const double expected = (0.47 * 0.47 + 0.42 * 0.42) / (1.0 + 0.47 * 0.47 + 0.42 * 0.42);
    CHECK(mcsa::sideband_power_fraction(spec, sidebands) ==
          doctest::Approx(expected).epsilon(1e-6));
    CHECK(expected == doctest::Approx(0.285).epsilon(2e-3));
  }
  SUBCASE("no sidebands means zero") {
    CHECK(mcsa::sideband_power_fraction(spec, {}) == 0.0);
  }
  SUBCASE("a single-tone spectrum concentrated in its only bin") {
    const Tone tone{23.0, 1.0};
    const Signal pure = make_signal({&tone, 1}, 1000.0, 1000);
    const Spectrum pure_spec =
        mcsa::compute_spectrum(pure, WindowKind::Rectangular, Normalization::Raw);
    const std::vector<double> bins{23.0};
    CHECK(mcsa::sideband_power_fraction(pure_spec, bins) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("out-of-range bin") {
    const std::vector<double> bad{1200.0};
    CHECK(throws_code(Errc::BandOutOfRange, [&] { mcsa::sideband_power_fraction(spec, bad); }));
  }
}
