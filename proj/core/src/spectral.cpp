#include "fraclame/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "fraclame/fft.hpp"

namespace fraclame {

namespace {

using Complex = std::complex<double>;

// Visits every stored frequency: f(linear_index, kx, ky) with signed k.
template <class F>
void for_each_frequency(const GridSpec& grid, F&& f) {
  const int n = grid.points_per_dim;
  if (grid.dim == 1) {
    for (int ix = 0; ix < n; ++ix) {
      const int kx = ix < n / 2 ? ix : ix - n;
      f(ix, kx, 0);
    }
    return;
  }
  for (int ix = 0; ix < n; ++ix) {
    const int kx = ix < n / 2 ? ix : ix - n;
    for (int iy = 0; iy < n; ++iy) {
      const int ky = iy < n / 2 ? iy : iy - n;
      f(ix * n + iy, kx, ky);
    }
  }
}

// Multiplies the zero mode by zero and reports whether anything nonzero
// was discarded (relative to the largest coefficient).
bool drop_zero_mode(SpectralField& spec) {
  double scale = 0.0;
  for (const Complex& c : spec.coeffs()) scale = std::max(scale, std::abs(c));
  double dropped = 0.0;
  for (int c = 0; c < spec.components(); ++c) {
    dropped = std::max(dropped, std::abs(spec.coeff(0, c)));
    spec.coeff(0, c) = 0.0;
  }
  return scale > 0.0 && dropped > 1e-12 * scale;
}

}  // namespace

double SpectralField::hermitian_defect() const {
  // self-conjugate modes (0 and -N/2 per axis) pair with themselves, so
  // their imaginary parts count twice; harmless for a max norm
  double defect = 0.0;
  for_each_frequency(grid_, [&](int idx, int kx, int ky) {
    const int jdx = freq_index(-kx, -ky);
    for (int c = 0; c < grid_.dim; ++c) {
      const Complex diff = coeff(idx, c) - std::conj(coeff(jdx, c));
      defect = std::max(defect, std::abs(diff));
    }
  });
  return defect;
}

SpectralField forward_transform(const VectorField& field) {
  field.grid().validate();
  const GridSpec& grid = field.grid();
  SpectralField out(grid);
  auto coeffs = out.coeffs();
  const auto vals = field.values();
  for (std::size_t i = 0; i < vals.size(); ++i) coeffs[i] = vals[i];
  fft_inplace(grid, coeffs.data(), grid.dim, -1);
  const double scale = 1.0 / grid.nodes();
  for (Complex& c : coeffs) c *= scale;
  return out;
}

VectorField inverse_transform(const SpectralField& spec) {
  const GridSpec& grid = spec.grid();
  double scale = 0.0;
  for (const Complex& c : spec.coeffs()) scale = std::max(scale, std::abs(c));
  const double defect = spec.hermitian_defect();
  // the absolute floor keeps rounding-level spectra (operators that
  // annihilate a field) from tripping the structural check
  if (defect > 1e-10 * scale && defect > 1e-14)
    throw std::invalid_argument(
        "inverse_transform: coefficients are not Hermitian-symmetric");

  std::vector<Complex> buf(spec.coeffs().begin(), spec.coeffs().end());
  fft_inplace(grid, buf, grid.dim, +1);
  VectorField out(grid);
  auto vals = out.values();
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = buf[i].real();
  out.set_dropped_zero_mode(spec.dropped_zero_mode());
  return out;
}

SpectralField frac_laplacian(SpectralField spec, double t) {
  if (!(t > 0.0) || !(t < 2.0))
    throw std::invalid_argument("frac_laplacian: t must be in (0,2)");
  const double L = spec.grid().box_length;
  const int dim = spec.components();
  for_each_frequency(spec.grid(), [&](int idx, int kx, int ky) {
    const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
    const double m =
        k2 == 0.0 ? 0.0 : std::pow(2.0 * kPi * std::sqrt(k2) / L, t);
    for (int c = 0; c < dim; ++c) spec.coeff(idx, c) *= m;
  });
  return spec;
}

VectorField frac_laplacian(const VectorField& field, double t) {
  return inverse_transform(frac_laplacian(forward_transform(field), t));
}

SpectralField riesz_potential(SpectralField spec, double t) {
  if (!(t > 0.0) || !(t < 2.0))
    throw std::invalid_argument("riesz_potential: t must be in (0,2)");
  const bool dropped = drop_zero_mode(spec);
  const double L = spec.grid().box_length;
  const int dim = spec.components();
  for_each_frequency(spec.grid(), [&](int idx, int kx, int ky) {
    const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
    if (k2 == 0.0) return;
    const double m = std::pow(2.0 * kPi * std::sqrt(k2) / L, -t);
    for (int c = 0; c < dim; ++c) spec.coeff(idx, c) *= m;
  });
  if (dropped) spec.set_dropped_zero_mode(true);
  return spec;
}

VectorField riesz_potential(const VectorField& field, double t) {
  return inverse_transform(riesz_potential(forward_transform(field), t));
}

SpectralField riesz_transform(SpectralField spec, int axis) {
  if (axis < 0 || axis >= spec.grid().dim)
    throw std::invalid_argument("riesz_transform: bad axis");
  const int dim = spec.components();
  drop_zero_mode(spec);
  for_each_frequency(spec.grid(), [&](int idx, int kx, int ky) {
    const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
    if (k2 == 0.0) return;
    const double kj = axis == 0 ? kx : ky;
    const Complex m(0.0, kj / std::sqrt(k2));
    for (int c = 0; c < dim; ++c) spec.coeff(idx, c) *= m;
  });
  return spec;
}

SpectralField riesz_matrix_apply(SpectralField spec) {
  const int dim = spec.components();
  const bool dropped = drop_zero_mode(spec);
  for_each_frequency(spec.grid(), [&](int idx, int kx, int ky) {
    const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
    if (k2 == 0.0) return;
    if (dim == 1) {
      spec.coeff(idx, 0) *= -1.0;
      return;
    }
    const double ex = kx / std::sqrt(k2);
    const double ey = ky / std::sqrt(k2);
    const Complex ux = spec.coeff(idx, 0);
    const Complex uy = spec.coeff(idx, 1);
    const Complex proj = ex * ux + ey * uy;  // (xi^ . u) xi^, negated
    spec.coeff(idx, 0) = -proj * ex;
    spec.coeff(idx, 1) = -proj * ey;
  });
  if (dropped) spec.set_dropped_zero_mode(true);
  return spec;
}

VectorField riesz_matrix_apply(const VectorField& field) {
  return inverse_transform(riesz_matrix_apply(forward_transform(field)));
}

SpectralField derivative(SpectralField spec, int axis) {
  if (axis < 0 || axis >= spec.grid().dim)
    throw std::invalid_argument("derivative: bad axis");
  const double L = spec.grid().box_length;
  const int dim = spec.components();
  const int n = spec.grid().points_per_dim;
  for_each_frequency(spec.grid(), [&](int idx, int kx, int ky) {
    int kj = axis == 0 ? kx : ky;
    // the Nyquist derivative mode has no real-field counterpart
    if (kj == -n / 2) kj = 0;
    const Complex m(0.0, 2.0 * kPi * kj / L);
    for (int c = 0; c < dim; ++c) spec.coeff(idx, c) *= m;
  });
  return spec;
}

VectorField derivative(const VectorField& field, int axis) {
  return inverse_transform(derivative(forward_transform(field), axis));
}

SpectralField vector_frac_laplacian(SpectralField spec, double s,
                                    const LameSymbolConstants& consts) {
  if (!(s > 0.0) || !(s < 1.0))
    throw std::invalid_argument("vector_frac_laplacian: s must be in (0,1)");
  consts.validate();
  const double L = spec.grid().box_length;
  const int dim = spec.components();
  for_each_frequency(spec.grid(), [&](int idx, int kx, int ky) {
    const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
    if (k2 == 0.0) {
      for (int c = 0; c < dim; ++c) spec.coeff(idx, c) = 0.0;
      return;
    }
    const double m = std::pow(2.0 * kPi * std::sqrt(k2) / L, 2.0 * s);
    if (dim == 1) {
      spec.coeff(idx, 0) *= m * (consts.ell1 + consts.ell2);
      return;
    }
    const double ex = kx / std::sqrt(k2);
    const double ey = ky / std::sqrt(k2);
    const Complex ux = spec.coeff(idx, 0);
    const Complex uy = spec.coeff(idx, 1);
    const Complex proj = ex * ux + ey * uy;
    spec.coeff(idx, 0) = m * (consts.ell1 * ux + consts.ell2 * proj * ex);
    spec.coeff(idx, 1) = m * (consts.ell1 * uy + consts.ell2 * proj * ey);
  });
  return spec;
}

VectorField vector_frac_laplacian(const VectorField& field, double s,
                                  const LameSymbolConstants& consts) {
  return inverse_transform(
      vector_frac_laplacian(forward_transform(field), s, consts));
}

namespace {

// Shared kernel of D(xi) = I - c P and D^{-1}(xi) = I + (c/(1-c)) P:
// applies I + coeff * P with P the longitudinal projector; the zero mode
// is untouched (R x R vanishes there, the identity part remains).
SpectralField apply_projector_shift(SpectralField spec, double coeff) {
  const int dim = spec.components();
  for_each_frequency(spec.grid(), [&](int idx, int kx, int ky) {
    const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky;
    if (k2 == 0.0) return;
    if (dim == 1) {
      spec.coeff(idx, 0) *= 1.0 + coeff;
      return;
    }
    const double ex = kx / std::sqrt(k2);
    const double ey = ky / std::sqrt(k2);
    const Complex proj =
        ex * spec.coeff(idx, 0) + ey * spec.coeff(idx, 1);
    spec.coeff(idx, 0) += coeff * proj * ex;
    spec.coeff(idx, 1) += coeff * proj * ey;
  });
  return spec;
}

void require_c_not_one(double c) {
  if (c == 1.0)
    throw std::invalid_argument("lame multiplier: c = 1 makes D(xi) singular");
}

}  // namespace

SpectralField lame_multiplier_apply(SpectralField spec, double c) {
  require_c_not_one(c);
  return apply_projector_shift(std::move(spec), -c);
}

VectorField lame_multiplier_apply(const VectorField& field, double c) {
  return inverse_transform(
      lame_multiplier_apply(forward_transform(field), c));
}

SpectralField lame_multiplier_solve(SpectralField spec, double c) {
  require_c_not_one(c);
  return apply_projector_shift(std::move(spec), c / (1.0 - c));
}

VectorField lame_multiplier_solve(const VectorField& field, double c) {
  return inverse_transform(
      lame_multiplier_solve(forward_transform(field), c));
}

}  // namespace fraclame
