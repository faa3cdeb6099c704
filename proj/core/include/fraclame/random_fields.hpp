#pragma once

#include <cstdint>

#include "fraclame/grid.hpp"

namespace fraclame {

/// Random real band-limited field: independent unit-normal coefficients on
/// frequencies with kmin <= |k|_inf <= kmax, Hermitian-symmetrized, zero
/// mean. Deterministic for a given seed, and the draw is independent of N,
/// so one seed denotes one continuum field across resolutions.
VectorField random_band_limited(const GridSpec& grid, int kmax,
                                std::uint64_t seed, int kmin = 1);

/// Plane wave amp * cos(2 pi k.x / L + phase).
VectorField plane_wave(const GridSpec& grid, int kx, int ky,
                       const double* amplitude, double phase = 0.0);
/// Convenience: amplitude parallel (longitudinal) or perpendicular
/// (transverse) to the frequency vector, unit length.
VectorField longitudinal_wave(const GridSpec& grid, int kx, int ky,
                              double phase = 0.0);
VectorField transverse_wave(const GridSpec& grid, int kx, int ky,
                            double phase = 0.0);

/// Smooth bump equal to 1 at the box center and vanishing (with all
/// derivatives) at the boundary of the centered sub-box of side
/// `fraction * L`; zero outside it.
double bump_window(const GridSpec& grid, int node, double fraction);

/// Multiplies the field by the bump window of the grid's support box
/// (or of the given fraction), producing a compactly supported field.
VectorField windowed(const VectorField& field, double fraction = 0.0);

}  // namespace fraclame
