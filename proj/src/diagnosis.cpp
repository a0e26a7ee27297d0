#include "mcsa/diagnosis.hpp"

#include <cmath>

#include "mcsa/errors.hpp"

namespace mcsa {

double relative_norm_error(std::span<const std::complex<double>> reference,
                           std::span<const std::complex<double>> candidate) {
  if (reference.size() != candidate.size())
    throw Error(Errc::LengthMismatch, "reference has " + std::to_string(reference.size()) +
                                          " samples, candidate has " +
                                          std::to_string(candidate.size()));
  double diff_sq = 0.0;
  double ref_sq = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const std::complex<double> d = candidate[i] - reference[i];
    diff_sq += std::norm(d);
    ref_sq += std::norm(reference[i]);
  }
  if (ref_sq == 0.0)
    throw Error(Errc::ZeroReferenceNorm, "reference has zero norm");
  return std::sqrt(diff_sq) / std::sqrt(ref_sq);
}

void RneCurve::validate() const {
  if (orders.empty()) throw Error(Errc::EmptyGrid, "curve has no orders");
  if (orders.size() != errors.size())
    throw Error(Errc::LengthMismatch, "orders and errors differ in length");
  if (orders.front() != 0.0 || orders.back() != 1.0)
    throw Error(Errc::InvalidParams, "order grid must start at 0 and end at 1");
  for (std::size_t i = 1; i < orders.size(); ++i)
    if (!(orders[i] > orders[i - 1]))
      throw Error(Errc::InvalidParams, "order grid must be strictly increasing");
  for (double e : errors)
    if (!(e >= 0.0) || !std::isfinite(e))
      throw Error(Errc::InvalidParams, "curve errors must be finite and >= 0");
}

std::vector<double> default_order_grid(double step) {
  if (!(step > 0.0 && step <= 1.0))
    throw Error(Errc::InvalidParams, "grid step must be in (0, 1]");
  const double intervals = 1.0 / step;
  const auto n = static_cast<std::size_t>(std::llround(intervals));
  if (n == 0 || std::abs(intervals - static_cast<double>(n)) > 1e-9)
    throw Error(Errc::InvalidParams, "grid step must divide [0, 1] evenly");
  std::vector<double> grid(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    grid[i] = static_cast<double>(i) / static_cast<double>(n);
  grid.front() = 0.0;
  grid.back() = 1.0;
  return grid;
}

namespace {

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw Error(Errc::EmptyGrid, "order grid is empty");
  if (grid.front() != 0.0 || grid.back() != 1.0)
    throw Error(Errc::InvalidParams, "order grid must start at 0 and end at 1");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw Error(Errc::InvalidParams, "order grid must be strictly increasing");
}

std::vector<std::complex<double>> magnitudes_of(const std::vector<std::complex<double>>& v) {
  std::vector<std::complex<double>> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::complex<double>(std::abs(v[i]), 0.0);
  return out;
}

}  // namespace

RneCurve rne_curve(const Signal& signal_a, const Signal& signal_b,
                   std::span<const double> grid, RneMode mode) {
  signal_a.validate();
  signal_b.validate();
  if (signal_a.size() != signal_b.size())
    throw Error(Errc::LengthMismatch, "signals have " + std::to_string(signal_a.size()) +
                                          " and " + std::to_string(signal_b.size()) +
                                          " samples");
  if (signal_a.sample_rate != signal_b.sample_rate)
    throw Error(Errc::SampleRateMismatch,
                std::to_string(signal_a.sample_rate) + " Hz vs " +
                    std::to_string(signal_b.sample_rate) + " Hz");
  check_grid(grid);

  const std::size_t n = signal_a.size();
  std::vector<std::complex<double>> xa(n), xb(n);
  for (std::size_t i = 0; i < n; ++i) {
    xa[i] = std::complex<double>(signal_a.samples[i], 0.0);
    xb[i] = std::complex<double>(signal_b.samples[i], 0.0);
  }

  RneCurve curve;
  curve.orders.assign(grid.begin(), grid.end());
  curve.errors.reserve(grid.size());
  for (double a : grid) {
    const FractionalOrder order(a);
    std::vector<std::complex<double>> fa = frft(xa, order);
    std::vector<std::complex<double>> fb = frft(xb, order);
    if (mode == RneMode::Magnitude) {
      fa = magnitudes_of(fa);
      fb = magnitudes_of(fb);
    }
    curve.errors.push_back(relative_norm_error(fa, fb));
  }
  return curve;
}

double mean_rne(const RneCurve& curve) {
  curve.validate();
  double sum = 0.0;
  for (double e : curve.errors) sum += e;
  return sum / static_cast<double>(curve.errors.size());
}

const char* to_string(HealthVerdict verdict) {
  switch (verdict) {
    case HealthVerdict::Healthy: return "healthy";
    case HealthVerdict::Faulty: return "faulty";
    case HealthVerdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

HealthVerdict classify(double mean_rne_value, Thresholds thresholds) {
  if (!(mean_rne_value >= 0.0))
    throw Error(Errc::InvalidParams, "mean RNE must be >= 0");
  if (mean_rne_value < thresholds.healthy_max) return HealthVerdict::Healthy;
  if (mean_rne_value > thresholds.faulty_min) return HealthVerdict::Faulty;
  return HealthVerdict::Indeterminate;
}

DiagnosisReport diagnose(const Signal& signal_a, const Signal& signal_b,
                         std::span<const double> grid, RneMode mode, Thresholds thresholds) {
  DiagnosisReport report;
  report.curve = rne_curve(signal_a, signal_b, grid, mode);
  report.mean_rne = mean_rne(report.curve);
  report.verdict = classify(report.mean_rne, thresholds);
  report.thresholds = thresholds;
  report.mode = mode;
  report.reference_label = signal_a.label;
  report.candidate_label = signal_b.label;
  return report;
}

std::ptrdiff_t cross_correlation_lag(const Signal& signal_a, const Signal& signal_b,
                                     std::size_t max_lag) {
  signal_a.validate();
  signal_b.validate();
  const auto n = static_cast<std::ptrdiff_t>(std::min(signal_a.size(), signal_b.size()));
  const auto max_l = static_cast<std::ptrdiff_t>(max_lag);

  double best = -1.0;
  std::ptrdiff_t best_lag = 0;
  for (std::ptrdiff_t lag = -max_l; lag <= max_l; ++lag) {
    double acc = 0.0;
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const std::ptrdiff_t j = i - lag;
      if (j < 0 || j >= n) continue;
      acc += signal_b.samples[static_cast<std::size_t>(i)] *
             signal_a.samples[static_cast<std::size_t>(j)];
    }
    if (acc > best) {
      best = acc;
      best_lag = lag;
    }
  }
  return best_lag;
}

}  // namespace mcsa
