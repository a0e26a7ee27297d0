#include "mcsa/frft.hpp"

#include <cmath>
#include <numbers>

#include "mcsa/errors.hpp"
#include "mcsa/fft.hpp"

namespace mcsa {

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

// Per-order constants of the sampled kernel. sigma carries the sign of
// sin(alpha) so phases reduce to multiples of 1/N; front = C_a * Delta has
// magnitude exactly 1/sqrt(N).
struct KernelGeometry {
  double sigma = 1.0;
  double cos_alpha = 0.0;
  cplx front;
};

KernelGeometry kernel_geometry(FractionalOrder order, std::size_t n) {
  const double alpha = order.angle();
  const double s = std::sin(alpha);
  const double ct = std::cos(alpha) / s;

  KernelGeometry g;
  g.sigma = (s >= 0.0) ? 1.0 : -1.0;
  g.cos_alpha = std::cos(alpha);
  const cplx c_a = std::sqrt(cplx(1.0, -ct));
  const double delta = std::sqrt(std::abs(s) / static_cast<double>(n));
  g.front = c_a * delta;
  return g;
}

std::vector<cplx> reversed(std::span<const cplx> input) {
  return {input.rbegin(), input.rend()};
}

}  // namespace

FractionalOrder::FractionalOrder(double a) : a_(a) {
  if (!std::isfinite(a))
    throw Error(Errc::OrderOutOfRange, "order must be finite");
  if (a < -2.0 || a > 2.0)
    throw Error(Errc::OrderOutOfRange,
                "order " + std::to_string(a) + " outside [-2, 2]");
}

double FractionalOrder::angle() const { return a_ * kPi / 2.0; }

bool FractionalOrder::is_identity() const { return std::abs(a_) < kDegenerateEps; }

bool FractionalOrder::is_parity() const {
  return std::abs(a_ - 2.0) < kDegenerateEps || std::abs(a_ + 2.0) < kDegenerateEps;
}

FrftKernelMatrix build_kernel(FractionalOrder order, std::size_t n) {
  if (n < 2) throw Error(Errc::DimensionTooSmall, "kernel needs dimension >= 2");

  FrftKernelMatrix k{order, n, std::vector<cplx>(n * n, cplx(0.0, 0.0))};
  if (order.is_identity()) {
    for (std::size_t i = 0; i < n; ++i) k.entries[i * n + i] = 1.0;
    return k;
  }
  if (order.is_parity()) {
    for (std::size_t i = 0; i < n; ++i) k.entries[i * n + (n - 1 - i)] = 1.0;
    return k;
  }

  const KernelGeometry g = kernel_geometry(order, n);
  const double c = (static_cast<double>(n) - 1.0) / 2.0;
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double dm = static_cast<double>(m) - c;
    for (std::size_t j = 0; j < n; ++j) {
      const double dn = static_cast<double>(j) - c;
      const double phase =
          kPi * g.sigma * (g.cos_alpha * (dm * dm + dn * dn) - 2.0 * dm * dn) * inv_n;
      k.entries[m * n + j] = g.front * cplx(std::cos(phase), std::sin(phase));
    }
  }
  return k;
}

std::vector<cplx> frft(std::span<const cplx> input, FractionalOrder order) {
  const std::size_t n = input.size();
  if (n < 2) throw Error(Errc::DimensionTooSmall, "transform needs length >= 2");
  if (order.is_identity()) return {input.begin(), input.end()};
  if (order.is_parity()) return reversed(input);

  const KernelGeometry g = kernel_geometry(order, n);
  const double c = (static_cast<double>(n) - 1.0) / 2.0;
  const double inv_n = 1.0 / static_cast<double>(n);

  // K = front * D_chirp * T * W_sigma * T * D_chirp with D_chirp the diagonal
  // quadratic phase, T the diagonal twiddle from re-centering the grid, and
  // W_sigma the (un-normalized) DFT of matching sign.
  std::vector<cplx> work(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double dn = static_cast<double>(j) - c;
    const double chirp = kPi * g.sigma * g.cos_alpha * dn * dn * inv_n;
    const double twiddle = 2.0 * kPi * g.sigma * c * static_cast<double>(j) * inv_n;
    work[j] = input[j] * std::polar(1.0, chirp + twiddle);
  }

  std::vector<cplx> spectrum;
  if (g.sigma > 0.0) {
    spectrum = fft::dft(work);
  } else {
    for (auto& v : work) v = std::conj(v);
    spectrum = fft::dft(work);
    for (auto& v : spectrum) v = std::conj(v);
  }

  std::vector<cplx> out(n);
  const double const_phase = -2.0 * kPi * g.sigma * c * c * inv_n;
  for (std::size_t m = 0; m < n; ++m) {
    const double dm = static_cast<double>(m) - c;
    const double chirp = kPi * g.sigma * g.cos_alpha * dm * dm * inv_n;
    const double twiddle = 2.0 * kPi * g.sigma * c * static_cast<double>(m) * inv_n;
    out[m] = g.front * std::polar(1.0, chirp + twiddle + const_phase) * spectrum[m];
  }
  return out;
}

std::vector<cplx> frft_reference(std::span<const cplx> input, FractionalOrder order) {
  const std::size_t n = input.size();
  if (n < 2) throw Error(Errc::DimensionTooSmall, "transform needs length >= 2");
  if (order.is_identity()) return {input.begin(), input.end()};
  if (order.is_parity()) return reversed(input);

  const KernelGeometry g = kernel_geometry(order, n);
  const double c = (static_cast<double>(n) - 1.0) / 2.0;
  const double inv_n = 1.0 / static_cast<double>(n);

  std::vector<cplx> out(n, cplx(0.0, 0.0));
  for (std::size_t m = 0; m < n; ++m) {
    const double dm = static_cast<double>(m) - c;
    cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double dn = static_cast<double>(j) - c;
      const double phase =
          kPi * g.sigma * (g.cos_alpha * (dm * dm + dn * dn) - 2.0 * dm * dn) * inv_n;
      acc += std::polar(1.0, phase) * input[j];
    }
    out[m] = g.front * acc;
  }
  return out;
}

FrftResult frft(const Signal& signal, FractionalOrder order) {
  signal.validate();
  std::vector<cplx> input(signal.samples.size());
  for (std::size_t i = 0; i < input.size(); ++i) input[i] = cplx(signal.samples[i], 0.0);
  return FrftResult{order, frft(input, order), signal.sample_rate};
}

std::vector<FrftResult> frft_sweep(const Signal& signal,
                                   std::span<const FractionalOrder> orders) {
  if (orders.empty()) throw Error(Errc::EmptyGrid, "sweep needs at least one order");
  signal.validate();

  std::vector<cplx> input(signal.samples.size());
  for (std::size_t i = 0; i < input.size(); ++i) input[i] = cplx(signal.samples[i], 0.0);

  std::vector<FrftResult> results;
  results.reserve(orders.size());
  for (const FractionalOrder& order : orders)
    results.push_back(FrftResult{order, frft(input, order), signal.sample_rate});
  return results;
}

}  // namespace mcsa
