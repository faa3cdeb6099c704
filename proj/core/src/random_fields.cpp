#include "fraclame/random_fields.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "fraclame/spectral.hpp"

namespace fraclame {

VectorField random_band_limited(const GridSpec& grid, int kmax,
                                std::uint64_t seed, int kmin) {
  grid.validate();
  if (kmin < 1 || kmax < kmin || kmax >= grid.points_per_dim / 2)
    throw std::invalid_argument(
        "random_band_limited: need 1 <= kmin <= kmax < N/2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  SpectralField spec(grid);
  const auto fill = [&](int kx, int ky) {
    if (std::max(std::abs(kx), std::abs(ky)) < kmin) return;
    const int idx = spec.freq_index(kx, ky);
    const int jdx = spec.freq_index(-kx, -ky);
    for (int c = 0; c < grid.dim; ++c) {
      const std::complex<double> z(gauss(rng), gauss(rng));
      spec.coeff(idx, c) = z;
      spec.coeff(jdx, c) = std::conj(z);
    }
  };
  if (grid.dim == 1) {
    for (int kx = 1; kx <= kmax; ++kx) fill(kx, 0);
  } else {
    // one representative per conjugate pair
    for (int kx = 1; kx <= kmax; ++kx)
      for (int ky = -kmax; ky <= kmax; ++ky) fill(kx, ky);
    for (int ky = 1; ky <= kmax; ++ky) fill(0, ky);
  }
  return inverse_transform(spec);
}

VectorField plane_wave(const GridSpec& grid, int kx, int ky,
                       const double* amplitude, double phase) {
  grid.validate();
  VectorField out(grid);
  const double L = grid.box_length;
  double x[2] = {0.0, 0.0};
  for (int i = 0; i < grid.nodes(); ++i) {
    grid.node_coords(i, x);
    const double arg =
        2.0 * kPi * (kx * x[0] + (grid.dim == 2 ? ky * x[1] : 0.0)) / L +
        phase;
    const double w = std::cos(arg);
    for (int c = 0; c < grid.dim; ++c) out.value(i, c) = amplitude[c] * w;
  }
  return out;
}

VectorField longitudinal_wave(const GridSpec& grid, int kx, int ky,
                              double phase) {
  const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
  if (k2 == 0.0)
    throw std::invalid_argument("longitudinal_wave: zero frequency");
  double amp[2] = {kx / std::sqrt(k2), ky / std::sqrt(k2)};
  if (grid.dim == 1) amp[0] = 1.0;
  return plane_wave(grid, kx, ky, amp, phase);
}

VectorField transverse_wave(const GridSpec& grid, int kx, int ky,
                            double phase) {
  if (grid.dim != 2)
    throw std::invalid_argument("transverse_wave: requires dim = 2");
  const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
  if (k2 == 0.0)
    throw std::invalid_argument("transverse_wave: zero frequency");
  const double amp[2] = {-ky / std::sqrt(k2), kx / std::sqrt(k2)};
  return plane_wave(grid, kx, ky, amp, phase);
}

double bump_window(const GridSpec& grid, int node, double fraction) {
  if (fraction <= 0.0) fraction = grid.support_fraction;
  const double half = 0.5 * grid.box_length;
  const double margin = 0.5 * fraction * grid.box_length;
  double x[2];
  grid.node_coords(node, x);
  double w = 1.0;
  for (int d = 0; d < grid.dim; ++d) {
    const double r = (x[d] - half) / margin;
    if (std::abs(r) >= 1.0) return 0.0;
    w *= std::exp(1.0 - 1.0 / (1.0 - r * r));
  }
  return w;
}

VectorField windowed(const VectorField& field, double fraction) {
  VectorField out = field;
  const GridSpec& grid = field.grid();
  for (int i = 0; i < grid.nodes(); ++i) {
    const double w = bump_window(grid, i, fraction);
    for (int c = 0; c < grid.dim; ++c) out.value(i, c) *= w;
  }
  return out;
}

}  // namespace fraclame
