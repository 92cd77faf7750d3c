#pragma once

#include <map>
#include <vector>

#include "qlab/numkit/grid.hpp"

namespace qlab::numkit {

// Direct discrete Fourier analysis on a PeriodicGrid, one axis at a time.
// Forward returns trigonometric-interpolation coefficients in bin order:
//   c[k] = (1/N^dim) sum_j samples[j] exp(-2*pi*i <k, j> / N),
// so that samples[j] = sum_k c[k] exp(+2*pi*i <k, j> / N). Coefficient bins
// map to balanced modes in (-N/2, N/2] via PeriodicGrid::mode_from_bin.
//
// dft_forward/dft_inverse run the per-line loops through OpenMP;
// the _serial variants are the plain reference implementations.

std::vector<cplx> dft_forward(const PeriodicGrid& grid, const std::vector<cplx>& samples);
std::vector<cplx> dft_forward_serial(const PeriodicGrid& grid, const std::vector<cplx>& samples);
std::vector<cplx> dft_inverse(const PeriodicGrid& grid, const std::vector<cplx>& coeffs);
std::vector<cplx> dft_inverse_serial(const PeriodicGrid& grid, const std::vector<cplx>& coeffs);

// Coefficients keyed by balanced mode vectors.
std::map<std::vector<int>, cplx> dft_modes(const PeriodicGrid& grid,
                                           const std::vector<cplx>& samples);

// Inverse of dft_modes: evaluate the trigonometric polynomial on the grid.
std::vector<cplx> dft_reconstruct(const PeriodicGrid& grid,
                                  const std::map<std::vector<int>, cplx>& modes);

}  // namespace qlab::numkit
