#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mcsa/signal_core.hpp"

namespace mcsa {

// Nameplate and geometry data for the fault-frequency calculators.
struct MotorParams {
  double supply_frequency = 50.0;   // f_f, Hz
  int pole_pairs = 1;               // p
  int rotor_slots = 28;             // R
  int bearing_balls = 8;            // n
  double rotor_mech_frequency = 0;  // f_rm, Hz
  double slip = 0.0;                // s, dimensionless in [0, 1)

  void validate() const;  // throws InvalidParams
};

// Slip from synchronous and measured rotor speed (same units, e.g. rpm).
double slip_from_speed(double sync_speed, double rotor_speed);

// Broken-bar sideband pair f_f*(1 -+ 2ks). A negative lower frequency is
// reflected to |f| and flagged; the symmetric-pair invariant
// (upper - f_f == f_f - lower) holds only when not reflected.
struct SidebandPair {
  double lower = 0.0;
  double upper = 0.0;
  int k = 1;
  bool lower_reflected = false;
};

std::vector<SidebandPair> broken_bar_frequencies(const MotorParams& params, int k_max);

// The trailing integer terms of the eccentricity and stator-turn formulas are
// dimensionally ambiguous; the default reads them as multiples of the supply
// frequency, RawHertz reads them literally.
enum class TrailingTermUnits { MultiplesOfSupply, RawHertz };

struct FaultFrequency {
  double frequency = 0.0;
  bool reflected = false;
};

// Air-gap eccentricity components f_f*[(R +- 1)(1-s)/p] + n_ws*f_f for each
// odd n_ws. Duplicates removed, negatives reflected and flagged.
std::vector<FaultFrequency> eccentricity_frequencies(
    const MotorParams& params, std::span<const int> n_ws_list,
    TrailingTermUnits units = TrailingTermUnits::MultiplesOfSupply);

// Stator short-turn components f_f*[n(1-s)/p] +- k*f_f for each (n, k), k odd.
std::vector<FaultFrequency> stator_fault_frequencies(
    const MotorParams& params, std::span<const int> n_list, std::span<const int> k_list,
    TrailingTermUnits units = TrailingTermUnits::MultiplesOfSupply);

// Bearing characteristic pair (0.4*n*f_rm, 0.6*n*f_rm).
std::pair<double, double> bearing_fault_frequencies(const MotorParams& params);

struct SidebandMatch {
  double predicted_hz = 0.0;
  int k = 0;
  bool is_upper = false;
  bool found = false;
  double frequency = 0.0;              // matched bin, Hz
  double magnitude = 0.0;              // in the spectrum's units
  double db_below_fundamental = 0.0;   // 20*log10(M_sb/M_1), negative when below
};

// Local maximum within +-tolerance of each predicted frequency, reported with
// its level relative to the fundamental bin. A prediction is absent when its
// window holds no true local peak, or when the candidate sits at or below
// absent_below_db relative to the fundamental (default -50 dB, the same gap
// past which the severity rule reads "no fault"). tolerance must span at
// least one bin.
std::vector<SidebandMatch> detect_sidebands(const Spectrum& spectrum, double fundamental_hz,
                                            std::span<const SidebandPair> predicted,
                                            double tolerance_hz,
                                            double absent_below_db = -50.0);

enum class BrokenBarVerdict { NoBrokenBar, OneBarCracked, MultipleBarsCracked };

struct SeverityVerdict {
  BrokenBarVerdict verdict = BrokenBarVerdict::NoBrokenBar;
  double db_difference = 0.0;
};

const char* to_string(BrokenBarVerdict verdict);

// db_difference is the positive gap between fundamental and sideband level:
// > 50 dB no broken bar, 40-50 dB (inclusive) one bar cracked, < 40 dB
// multiple bars cracked.
SeverityVerdict broken_bar_severity(double db_difference);

}  // namespace mcsa
