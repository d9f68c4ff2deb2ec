#pragma once

#include <complex>
#include <span>
#include <vector>

namespace lamelab::fourier {

using cplx = std::complex<double>;

/// In-place unnormalized forward DFT of an n^d array (axis 0 slowest).
void forward(std::span<cplx> data, int d, int n);

/// In-place inverse DFT, normalized by 1/n^d.
void inverse(std::span<cplx> data, int d, int n);

/// Angular wavenumbers per index in FFT order for spacing h: (2*pi/(n*h)) * m with
/// m in {0, 1, ..., n/2-1, -n/2, ..., -1}. With zero_nyquist the m = -n/2 entry is 0.
std::vector<double> axis_wavenumbers(int n, double h, bool zero_nyquist);

}  // namespace lamelab::fourier
