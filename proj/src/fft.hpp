#pragma once

// Thin FFTW wrapper shared by the 1D and 2D spectral code. Plans are created
// once per size under a mutex and executed through the new-array interface,
// which FFTW documents as thread-safe.

#include <complex>
#include <vector>

namespace hjlab::fft {

using Complex = std::complex<double>;

/// Real-to-half-complex 2D transform of an n x n row-major array; the output
/// has n * (n/2 + 1) entries. Unnormalized.
void forward_2d(int n, const double* in, Complex* out);
/// Inverse of forward_2d, scaled by 1/n^2. `in` is not modified.
void inverse_2d(int n, const Complex* in, double* out);

/// 1D analogue with n/2 + 1 outputs.
void forward_1d(int n, const double* in, Complex* out);
void inverse_1d(int n, const Complex* in, double* out);

/// Signed wavenumber of a full-length FFT index.
inline int wavenumber(int index, int n) { return index < n / 2 ? index : index - n; }

}  // namespace hjlab::fft
