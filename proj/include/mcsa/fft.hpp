#pragma once

#include <complex>
#include <span>
#include <vector>

namespace mcsa::fft {

using cplx = std::complex<double>;

// In-place radix-2 Cooley-Tukey. data.size() must be a power of two.
// inverse=true applies the conjugate transform without the 1/N factor.
void transform_pow2(std::vector<cplx>& data, bool inverse);

// DFT of arbitrary length: X[k] = sum_n x[n] exp(-2*pi*i*k*n/N).
// Power-of-two lengths go through radix-2 directly; everything else uses
// Bluestein's chirp-z reduction to a padded power-of-two convolution.
std::vector<cplx> dft(std::span<const cplx> input);

// Inverse counterpart including the 1/N factor.
std::vector<cplx> idft(std::span<const cplx> input);

}  // namespace mcsa::fft
