#include "mcsa/signatures.hpp"

#include <algorithm>
#include <cmath>

#include "mcsa/errors.hpp"

namespace mcsa {

void MotorParams::validate() const {
  if (!(supply_frequency > 0.0) || !std::isfinite(supply_frequency))
    throw Error(Errc::InvalidParams, "supply_frequency must be positive");
  if (!(slip >= 0.0 && slip < 1.0))
    throw Error(Errc::InvalidParams, "slip must be in [0, 1)");
  if (!(rotor_mech_frequency >= 0.0) || !std::isfinite(rotor_mech_frequency))
    throw Error(Errc::InvalidParams, "rotor_mech_frequency must be >= 0");
  if (pole_pairs < 1) throw Error(Errc::InvalidParams, "pole_pairs must be >= 1");
  if (rotor_slots < 1) throw Error(Errc::InvalidParams, "rotor_slots must be >= 1");
  if (bearing_balls < 1) throw Error(Errc::InvalidParams, "bearing_balls must be >= 1");
}

double slip_from_speed(double sync_speed, double rotor_speed) {
  if (!(sync_speed > 0.0))
    throw Error(Errc::InvalidParams, "synchronous speed must be positive");
  return (sync_speed - rotor_speed) / sync_speed;
}

std::vector<SidebandPair> broken_bar_frequencies(const MotorParams& params, int k_max) {
  params.validate();
  if (k_max < 1) throw Error(Errc::InvalidParams, "k_max must be >= 1");

  std::vector<SidebandPair> pairs;
  pairs.reserve(static_cast<std::size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) {
    SidebandPair p;
    p.k = k;
    p.lower = params.supply_frequency * (1.0 - 2.0 * k * params.slip);
    p.upper = params.supply_frequency * (1.0 + 2.0 * k * params.slip);
    if (p.lower < 0.0) {
      p.lower = -p.lower;
      p.lower_reflected = true;
    }
    pairs.push_back(p);
  }
  return pairs;
}

namespace {

void push_reflected(std::vector<FaultFrequency>& out, double f) {
  FaultFrequency ff;
  ff.frequency = std::abs(f);
  ff.reflected = (f < 0.0);
  // drop exact duplicates, keeping first occurrence
  for (const auto& existing : out)
    if (existing.frequency == ff.frequency && existing.reflected == ff.reflected) return;
  out.push_back(ff);
}

}  // namespace

std::vector<FaultFrequency> eccentricity_frequencies(const MotorParams& params,
                                                     std::span<const int> n_ws_list,
                                                     TrailingTermUnits units) {
  params.validate();
  for (int n_ws : n_ws_list)
    if (n_ws % 2 == 0)
      throw Error(Errc::EvenNws, "n_ws must be odd, got " + std::to_string(n_ws));

  const double f_f = params.supply_frequency;
  const double slot_factor = (1.0 - params.slip) / static_cast<double>(params.pole_pairs);
  std::vector<FaultFrequency> out;
  for (int n_ws : n_ws_list) {
    const double trailing =
        (units == TrailingTermUnits::MultiplesOfSupply) ? n_ws * f_f : static_cast<double>(n_ws);
    for (int n_d : {+1, -1}) {
      const double slot = f_f * (params.rotor_slots + n_d) * slot_factor;
      push_reflected(out, slot + trailing);
    }
  }
  return out;
}

std::vector<FaultFrequency> stator_fault_frequencies(const MotorParams& params,
                                                     std::span<const int> n_list,
                                                     std::span<const int> k_list,
                                                     TrailingTermUnits units) {
  params.validate();
  for (int k : k_list)
    if (k % 2 == 0) throw Error(Errc::EvenK, "k must be odd, got " + std::to_string(k));

  const double f_f = params.supply_frequency;
  std::vector<FaultFrequency> out;
  for (int n : n_list) {
    const double base =
        f_f * static_cast<double>(n) * (1.0 - params.slip) / static_cast<double>(params.pole_pairs);
    for (int k : k_list) {
      const double trailing =
          (units == TrailingTermUnits::MultiplesOfSupply) ? k * f_f : static_cast<double>(k);
      push_reflected(out, base + trailing);
      push_reflected(out, base - trailing);
    }
  }
  return out;
}

std::pair<double, double> bearing_fault_frequencies(const MotorParams& params) {
  params.validate();
  const double nf = params.bearing_balls * params.rotor_mech_frequency;
  return {0.4 * nf, 0.6 * nf};
}

std::vector<SidebandMatch> detect_sidebands(const Spectrum& spectrum, double fundamental_hz,
                                            std::span<const SidebandPair> predicted,
                                            double tolerance_hz, double absent_below_db) {
  const double spacing = spectrum.bin_spacing();
  if (!(tolerance_hz > 0.0) || tolerance_hz < spacing)
    throw Error(Errc::BinTooNarrow, "tolerance must span at least one bin (" +
                                        std::to_string(spacing) + " Hz)");
  const double m1 = spectrum.magnitudes[spectrum.nearest_bin(fundamental_hz)];
  if (m1 == 0.0)
    throw Error(Errc::FundamentalMagnitudeZero, "fundamental bin magnitude is zero");

  const double floor_mag = m1 * std::pow(10.0, absent_below_db / 20.0);

  auto match_one = [&](double target, int k, bool is_upper) {
    SidebandMatch m;
    m.predicted_hz = target;
    m.k = k;
    m.is_upper = is_upper;

    const std::size_t last = spectrum.size() - 1;
    const double df = spectrum.bin_spacing();
    // bins strictly inside [target - tol, target + tol]; DC never matches
    auto lo_ll = static_cast<long long>(std::ceil((target - tolerance_hz) / df - 1e-9));
    auto hi_ll = static_cast<long long>(std::floor((target + tolerance_hz) / df + 1e-9));
    lo_ll = std::max<long long>(lo_ll, 1);
    hi_ll = std::min<long long>(hi_ll, static_cast<long long>(last));
    if (lo_ll > hi_ll) return m;  // absent: no bins in the window
    const auto lo = static_cast<std::size_t>(lo_ll);
    const auto hi = static_cast<std::size_t>(hi_ll);

    std::size_t best = lo;
    for (std::size_t i = lo; i <= hi; ++i)
      if (spectrum.magnitudes[i] > spectrum.magnitudes[best]) best = i;

    const double mag = spectrum.magnitudes[best];
    if (mag <= floor_mag) return m;
    // require a true local peak, not the shoulder of something outside
    const double left = (best > 0) ? spectrum.magnitudes[best - 1] : 0.0;
    const double right = (best < last) ? spectrum.magnitudes[best + 1] : 0.0;
    if (mag < left || mag < right) return m;

    m.found = true;
    m.frequency = spectrum.frequencies[best];
    m.magnitude = mag;
    m.db_below_fundamental = 20.0 * std::log10(mag / m1);
    return m;
  };

  std::vector<SidebandMatch> out;
  out.reserve(predicted.size() * 2);
  for (const SidebandPair& p : predicted) {
    out.push_back(match_one(p.lower, p.k, false));
    out.push_back(match_one(p.upper, p.k, true));
  }
  return out;
}

const char* to_string(BrokenBarVerdict verdict) {
  switch (verdict) {
    case BrokenBarVerdict::NoBrokenBar: return "no-broken-bar";
    case BrokenBarVerdict::OneBarCracked: return "one-bar-cracked";
    case BrokenBarVerdict::MultipleBarsCracked: return "multiple-bars-cracked";
  }
  return "?";
}

SeverityVerdict broken_bar_severity(double db_difference) {
  if (!std::isfinite(db_difference))
    throw Error(Errc::InvalidParams, "db_difference must be finite");
  SeverityVerdict v;
  v.db_difference = db_difference;
  if (db_difference > 50.0)
    v.verdict = BrokenBarVerdict::NoBrokenBar;
  else if (db_difference >= 40.0)
    v.verdict = BrokenBarVerdict::OneBarCracked;
  else
    v.verdict = BrokenBarVerdict::MultipleBarsCracked;
  return v;
}

}  // namespace mcsa
