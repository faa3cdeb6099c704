#pragma once

#include <complex>
#include <vector>

#include "fraclame/grid.hpp"

namespace fraclame {

/// Unnormalized in-place DFT over the grid lattice (FFTW backend).
/// `howmany` interleaved transforms with stride `howmany`; sign = -1 is the
/// forward kernel e^{-2 pi i k.x/N}. Plans are cached per shape; plan
/// creation is serialized internally, execution is thread-safe on distinct
/// buffers.
void fft_inplace(const GridSpec& grid, std::complex<double>* data,
                 int howmany, int sign);

void fft_inplace(const GridSpec& grid, std::vector<std::complex<double>>& data,
                 int howmany, int sign);

}  // namespace fraclame
