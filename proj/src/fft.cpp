#include "mcsa/fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace mcsa::fft {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) { return std::bit_ceil(n); }

}  // namespace

void transform_pow2(std::vector<cplx>& data, bool inverse) {
  const std::size_t n = data.size();
  if (n < 2) return;

  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * kPi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const cplx u = data[i + j];
        const cplx v = data[i + j + len / 2] * w;
        data[i + j] = u + v;
        data[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

namespace {

// Bluestein chirp-z: x[n]*exp(-i*pi*n^2/N) convolved with exp(+i*pi*k^2/N),
// padded to a power of two.
std::vector<cplx> dft_bluestein(std::span<const cplx> input) {
  const std::size_t n = input.size();
  const std::size_t m = next_pow2(2 * n - 1);

  std::vector<cplx> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2N keeps the argument small for exact trig reduction
    const double phase = kPi * static_cast<double>((k * k) % (2 * n)) / static_cast<double>(n);
    chirp[k] = cplx(std::cos(phase), -std::sin(phase));
  }

  std::vector<cplx> a(m, cplx(0.0, 0.0));
  std::vector<cplx> b(m, cplx(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) a[k] = input[k] * chirp[k];
  b[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) {
    b[k] = std::conj(chirp[k]);
    b[m - k] = b[k];
  }

  transform_pow2(a, false);
  transform_pow2(b, false);
  for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
  transform_pow2(a, true);

  std::vector<cplx> out(n);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * scale * chirp[k];
  return out;
}

}  // namespace

std::vector<cplx> dft(std::span<const cplx> input) {
  const std::size_t n = input.size();
  if (n == 0) return {};
  if (n == 1) return {input[0]};
  if (is_pow2(n)) {
    std::vector<cplx> data(input.begin(), input.end());
    transform_pow2(data, false);
    return data;
  }
  return dft_bluestein(input);
}

std::vector<cplx> idft(std::span<const cplx> input) {
  const std::size_t n = input.size();
  std::vector<cplx> conj_in(n);
  for (std::size_t i = 0; i < n; ++i) conj_in[i] = std::conj(input[i]);
  std::vector<cplx> out = dft(conj_in);
  const double scale = 1.0 / static_cast<double>(n);
  for (auto& v : out) v = std::conj(v) * scale;
  return out;
}

}  // namespace mcsa::fft
