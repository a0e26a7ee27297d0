#include "mcsa/sim.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "mcsa/errors.hpp"

namespace mcsa {

namespace {

constexpr double kPi = std::numbers::pi;

// Gaussian deviates via Box-Muller on top of mt19937_64, whose integer stream
// the standard pins down; std::normal_distribution is implementation-defined
// and would break byte-reproducibility across toolchains.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double next() {
    const double u1 =
        (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

std::size_t SimConfig::sample_count() const {
  return static_cast<std::size_t>(std::llround(sample_rate * duration));
}

double SimConfig::highest_frequency() const {
  double top = (fundamental_amplitude > 0.0) ? supply_frequency : 0.0;
  for (const auto& [h, amp] : harmonic_amplitudes)
    if (amp > 0.0) top = std::max(top, supply_frequency * h);
  for (const auto& [k, sb] : broken_bar) {
    if (sb.lower_amplitude > 0.0)
      top = std::max(top, std::abs(supply_frequency * (1.0 - 2.0 * k * slip)));
    if (sb.upper_amplitude > 0.0)
      top = std::max(top, supply_frequency * (1.0 + 2.0 * k * slip));
  }
  return top;
}

void SimConfig::validate() const {
  if (!(supply_frequency > 0.0) || !std::isfinite(supply_frequency))
    throw Error(Errc::InvalidParams, "supply_frequency must be positive");
  if (fundamental_amplitude < 0.0)
    throw Error(Errc::InvalidParams, "fundamental_amplitude must be >= 0");
  for (const auto& [h, amp] : harmonic_amplitudes) {
    if (h < 2) throw Error(Errc::InvalidParams, "harmonic index must be >= 2");
    if (amp < 0.0) throw Error(Errc::InvalidParams, "harmonic amplitude must be >= 0");
  }
  if (!(slip >= 0.0 && slip < 1.0)) throw Error(Errc::InvalidParams, "slip must be in [0, 1)");
  for (const auto& [k, sb] : broken_bar) {
    if (k < 1) throw Error(Errc::InvalidParams, "sideband k must be >= 1");
    if (sb.lower_amplitude < 0.0 || sb.upper_amplitude < 0.0)
      throw Error(Errc::InvalidParams, "sideband amplitudes must be >= 0");
  }
  if (noise_rms < 0.0) throw Error(Errc::InvalidParams, "noise_rms must be >= 0");
  if (!(sample_rate > 0.0)) throw Error(Errc::InvalidParams, "sample_rate must be positive");
  if (!(duration > 0.0)) throw Error(Errc::InvalidParams, "duration must be positive");
  if (sample_count() < 2)
    throw Error(Errc::InvalidParams, "duration * sample_rate must be >= 2 samples");
  const double top = highest_frequency();
  if (sample_rate <= 2.0 * top)
    throw Error(Errc::NyquistViolation,
                "sample_rate " + std::to_string(sample_rate) + " Hz cannot represent " +
                    std::to_string(top) + " Hz content");
}

Signal generate(const SimConfig& config) {
  config.validate();
  const std::size_t n = config.sample_count();

  Signal signal;
  signal.sample_rate = config.sample_rate;
  signal.samples.assign(n, 0.0);
  {
    std::ostringstream label;
    label << "sim supply=" << config.supply_frequency << "Hz fs=" << config.sample_rate
          << "Hz seed=" << config.seed;
    signal.label = label.str();
  }

  const double w0 = 2.0 * kPi * config.supply_frequency;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / config.sample_rate;
    double v = config.fundamental_amplitude * std::sin(w0 * t);
    for (const auto& [h, amp] : config.harmonic_amplitudes)
      if (amp > 0.0) v += amp * std::sin(w0 * h * t);
    for (const auto& [k, sb] : config.broken_bar) {
      const double wl = w0 * (1.0 - 2.0 * k * config.slip);
      const double wu = w0 * (1.0 + 2.0 * k * config.slip);
      if (sb.lower_amplitude > 0.0) v += sb.lower_amplitude * std::sin(wl * t + sb.lower_phase);
      if (sb.upper_amplitude > 0.0) v += sb.upper_amplitude * std::sin(wu * t + sb.upper_phase);
    }
    signal.samples[i] = v;
  }

  if (config.noise_rms > 0.0) {
    GaussianSource noise(config.seed);
    for (auto& s : signal.samples) s += config.noise_rms * noise.next();
  }
  return signal;
}

double bin_scalloping_gain(double frequency_hz, double sample_rate, std::size_t n) {
  if (!(sample_rate > 0.0) || n < 2)
    throw Error(Errc::InvalidParams, "scalloping gain needs a valid grid");
  const double k = frequency_hz * static_cast<double>(n) / sample_rate;
  const double d = k - std::round(k);
  if (std::abs(d) < 1e-12) return 1.0;
  return std::abs(std::sin(kPi * d) /
                  (static_cast<double>(n) * std::sin(kPi * d / static_cast<double>(n))));
}

const std::map<std::string, SimConfig>& presets() {
  static const std::map<std::string, SimConfig> table = [] {
    std::map<std::string, SimConfig> t;

    // Healthy rigs: odd/even harmonic content, mild noise. Harmonic levels are
    // tool conventions, not measured values.
    SimConfig h20;
    h20.harmonic_amplitudes = {{2, 0.02}, {3, 0.05}, {5, 0.03}};
    h20.noise_rms = 0.01;
    h20.seed = 20;
    for (double f : {8.0, 10.0, 14.0, 16.0, 18.0, 23.0}) {
      SimConfig c = h20;
      c.supply_frequency = f;
      t["healthy-20hp-" + std::to_string(static_cast<int>(f)) + "Hz"] = c;
    }

    SimConfig h40;
    h40.harmonic_amplitudes = {{2, 0.015}, {3, 0.04}, {5, 0.025}};
    h40.noise_rms = 0.012;
    h40.seed = 40;
    for (double f : {8.0, 10.0, 14.0, 18.0, 23.0}) {
      SimConfig c = h40;
      c.supply_frequency = f;
      t["healthy-40hp-" + std::to_string(static_cast<int>(f)) + "Hz"] = c;
    }

    // Faulty rig at 23 Hz, slip 0.197: k=1 sidebands at 13.938/32.062 Hz.
    // Those tones sit 0.25 bins off the 4 s / 1 kHz grid, so the injected
    // amplitudes are the documented 0.47/0.42 normalized bin readings divided
    // by the rectangular-window scalloping gain at the nearest bin. The k=2
    // family and all phases are tool conventions for a severely damaged rotor.
    SimConfig faulty = h20;
    faulty.supply_frequency = 23.0;
    faulty.slip = 0.197;
    faulty.seed = 23;
    const std::size_t n = faulty.sample_count();
    const double fl = faulty.supply_frequency * (1.0 - 2.0 * faulty.slip);
    const double fu = faulty.supply_frequency * (1.0 + 2.0 * faulty.slip);
    SidebandSpec k1;
    k1.lower_amplitude = 0.47 / bin_scalloping_gain(fl, faulty.sample_rate, n);
    k1.upper_amplitude = 0.42 / bin_scalloping_gain(fu, faulty.sample_rate, n);
    k1.lower_phase = 0.0;
    k1.upper_phase = 3.0 * kPi / 2.0;
    SidebandSpec k2;
    k2.lower_amplitude = 0.35;
    k2.upper_amplitude = 0.35;
    k2.lower_phase = kPi / 2.0;
    k2.upper_phase = kPi / 2.0;
    faulty.broken_bar = {{1, k1}, {2, k2}};
    t["faulty-20hp-23Hz"] = faulty;

    return t;
  }();
  return table;
}

}  // namespace mcsa
