#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "mcsa/frft.hpp"
#include "mcsa/signal_core.hpp"

namespace mcsa {

// ||candidate - reference||_2 / ||reference||_2. Not symmetric in its
// arguments; the reference goes first.
double relative_norm_error(std::span<const std::complex<double>> reference,
                           std::span<const std::complex<double>> candidate);

// Which sequences the per-order error is computed on. Magnitude mode compares
// |F_a x| against |F_a y| and is the default: the transform is norm-preserving,
// so complex-mode curves are constant across orders while magnitude-mode
// curves vary with the order as the reported curves do.
enum class RneMode { Magnitude, Complex };

struct RneCurve {
  std::vector<double> orders;  // strictly increasing, first 0, last 1
  std::vector<double> errors;  // same length, finite, >= 0

  void validate() const;
};

// Uniform grid over [0, 1]; step must divide 1 into a whole number of
// intervals (within rounding). Default 101 points.
std::vector<double> default_order_grid(double step = 0.01);

// Per-order relative norm error between the two signals' fractional
// transforms, signal_a's transform as reference.
RneCurve rne_curve(const Signal& signal_a, const Signal& signal_b,
                   std::span<const double> grid, RneMode mode = RneMode::Magnitude);

double mean_rne(const RneCurve& curve);

enum class HealthVerdict { Healthy, Faulty, Indeterminate };

const char* to_string(HealthVerdict verdict);

struct Thresholds {
  double healthy_max = 0.3;
  double faulty_min = 0.5;
};

// Healthy iff mean < healthy_max, Faulty iff mean > faulty_min, Indeterminate
// in the closed gap between them (both boundaries abstain).
HealthVerdict classify(double mean_rne_value, Thresholds thresholds = {});

struct DiagnosisReport {
  RneCurve curve;
  double mean_rne = 0.0;
  HealthVerdict verdict = HealthVerdict::Indeterminate;
  Thresholds thresholds;
  RneMode mode = RneMode::Magnitude;
  std::string reference_label;
  std::string candidate_label;
};

// rne_curve -> mean -> classify, packaged with the inputs' labels.
DiagnosisReport diagnose(const Signal& signal_a, const Signal& signal_b,
                         std::span<const double> grid, RneMode mode = RneMode::Magnitude,
                         Thresholds thresholds = {});

// Lag in [-max_lag, max_lag] maximizing the cross-correlation of b against a;
// a positive result means b starts later. Offered for aligning capture
// windows; nothing in the pipeline applies it implicitly.
std::ptrdiff_t cross_correlation_lag(const Signal& signal_a, const Signal& signal_b,
                                     std::size_t max_lag);

}  // namespace mcsa
