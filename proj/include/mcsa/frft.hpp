#pragma once

#include <complex>
#include <span>
#include <vector>

#include "mcsa/signal_core.hpp"

namespace mcsa {

// Fractional order a in [-2, 2]; the rotational angle is alpha = a*pi/2 and is
// always derived, never stored. a=0 is the identity, a=1 the Fourier
// transform, a=-1 its inverse, a=+-2 index reversal.
class FractionalOrder {
 public:
  explicit FractionalOrder(double a);

  double value() const { return a_; }
  double angle() const;  // a*pi/2

  // Inside the degenerate guard (|a| < eps or |a -+ 2| < eps) the transform is
  // the exact identity / parity permutation instead of the sampled kernel.
  static constexpr double kDegenerateEps = 1e-6;
  bool is_identity() const;
  bool is_parity() const;

 private:
  double a_;
};

struct FrftResult {
  FractionalOrder order;
  std::vector<std::complex<double>> values;  // fractional-domain samples, length N
  double sample_rate = 0.0;                  // of the originating signal
};

// Dense sampled kernel, row-major (row = output index m, column = input n).
struct FrftKernelMatrix {
  FractionalOrder order;
  std::size_t dimension = 0;
  std::vector<std::complex<double>> entries;

  std::complex<double> at(std::size_t row, std::size_t col) const {
    return entries[row * dimension + col];
  }
};

// Sampled fractional-kernel matrix
//   K[m,n] = C_a * exp(-i*pi*(2*x_n*xi_m/sin(alpha) - (x_n^2 + xi_m^2)*cot(alpha))) * Delta
// on the symmetric grid x_k = xi_k = (k - (N-1)/2)*Delta with
// Delta = sqrt(|sin(alpha)|/N), and C_a = sqrt(1 - i*cot(alpha)) (principal
// root). This grid constant makes K exactly unitary with K(-a) = K(a)^H for
// every non-degenerate order, and equals 1/sqrt(N) at a = +-1 where K is the
// centered unitary DFT. Degenerate orders return the identity / parity matrix.
FrftKernelMatrix build_kernel(FractionalOrder order, std::size_t n);

// Production transform: an FFT-based factorization of the same kernel
// (diagonal chirp -> twiddled DFT -> diagonal chirp), agreeing with the dense
// product to rounding error. O(N log N), any N.
std::vector<std::complex<double>> frft(std::span<const std::complex<double>> input,
                                       FractionalOrder order);

FrftResult frft(const Signal& signal, FractionalOrder order);

// Reference path: dense kernel-matrix product, evaluated entry by entry
// without materializing the matrix. O(N^2). This is the oracle the production
// path is checked against.
std::vector<std::complex<double>> frft_reference(std::span<const std::complex<double>> input,
                                                 FractionalOrder order);

// One FrftResult per order, order-aligned; identical to independent frft calls.
std::vector<FrftResult> frft_sweep(const Signal& signal,
                                   std::span<const FractionalOrder> orders);

}  // namespace mcsa
