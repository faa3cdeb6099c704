#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fraclame/grid.hpp"
#include "fraclame/symbols.hpp"

namespace fraclame {

/// Frequency-domain representation of a VectorField. Coefficients follow
/// the convention u(x) = sum_k c(k) e^{2 pi i k.x / L} with k per axis in
/// {-N/2, ..., N/2-1} (FFTW storage order), i.e. xi = k / L and the forward
/// kernel is e^{-2 pi i x.xi}. A field is real iff c(-k) = conj(c(k)).
///
/// Plancherel: h^n sum_x |u(x)|^2 = L^n sum_k |c(k)|^2.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const GridSpec& grid)
      : grid_(grid),
        coeffs_(static_cast<std::size_t>(grid.nodes()) * grid.dim, 0.0) {}

  const GridSpec& grid() const { return grid_; }
  int components() const { return grid_.dim; }

  std::complex<double>& coeff(int freq_index, int comp) {
    return coeffs_[static_cast<std::size_t>(freq_index) * grid_.dim + comp];
  }
  const std::complex<double>& coeff(int freq_index, int comp) const {
    return coeffs_[static_cast<std::size_t>(freq_index) * grid_.dim + comp];
  }
  std::span<std::complex<double>> coeffs() { return coeffs_; }
  std::span<const std::complex<double>> coeffs() const { return coeffs_; }

  /// Storage index of the frequency (kx[, ky]), signed k in [-N/2, N/2).
  int freq_index(int kx, int ky = 0) const {
    const int n = grid_.points_per_dim;
    const int ix = (kx % n + n) % n;
    if (grid_.dim == 1) return ix;
    const int iy = (ky % n + n) % n;
    return ix * n + iy;
  }
  /// Signed frequency vector of a storage index.
  void frequency(int index, int* kx, int* ky) const {
    const int n = grid_.points_per_dim;
    int ix, iy;
    grid_.node_index(index, &ix, &iy);
    *kx = ix < n / 2 ? ix : ix - n;
    *ky = grid_.dim == 2 ? (iy < n / 2 ? iy : iy - n) : 0;
  }

  /// Max |c(-k) - conj(c(k))| over all frequencies and components.
  double hermitian_defect() const;

  bool dropped_zero_mode() const { return dropped_zero_mode_; }
  void set_dropped_zero_mode(bool flag) { dropped_zero_mode_ = flag; }

 private:
  GridSpec grid_;
  std::vector<std::complex<double>> coeffs_;
  bool dropped_zero_mode_ = false;
};

SpectralField forward_transform(const VectorField& field);
/// Requires Hermitian symmetry (the result is a real field); throws
/// std::invalid_argument otherwise.
VectorField inverse_transform(const SpectralField& spec);

// ---------------------------------------------------------------------------
// Fourier-multiplier operators. Every operator has a spectral-domain form
// plus a VectorField convenience wrapper (forward, apply, invert).
// ---------------------------------------------------------------------------

/// (-Delta)^{t/2}: multiplier (2 pi |xi|)^t, t in (0,2); the zero mode is
/// annihilated.
SpectralField frac_laplacian(SpectralField spec, double t);
VectorField frac_laplacian(const VectorField& field, double t);

/// Riesz potential I^t: multiplier (2 pi |xi|)^{-t}; the zero mode is
/// dropped, and the output carries the dropped-mode flag when the input
/// mean was nonzero.
SpectralField riesz_potential(SpectralField spec, double t);
VectorField riesz_potential(const VectorField& field, double t);

/// Scalar Riesz transform R_j per component: multiplier i xi_j / |xi|.
SpectralField riesz_transform(SpectralField spec, int axis);

/// Matrix operator R x R with symbol -(xi^ x xi^); longitudinal waves map
/// to -1 times themselves, transverse waves to zero. Zero mode dropped
/// (flagged when nonzero).
SpectralField riesz_matrix_apply(SpectralField spec);
VectorField riesz_matrix_apply(const VectorField& field);

/// Spectral partial derivative d/dx_axis: multiplier 2 pi i xi_axis.
SpectralField derivative(SpectralField spec, int axis);
VectorField derivative(const VectorField& field, int axis);

/// Coupled fractional operator with symbol
/// (2 pi |xi|)^{2s} (ell1 I + ell2 xi^ x xi^), s in (0,1).
SpectralField vector_frac_laplacian(SpectralField spec, double s,
                                    const LameSymbolConstants& consts);
VectorField vector_frac_laplacian(const VectorField& field, double s,
                                  const LameSymbolConstants& consts);

/// U -> U + c (R x R) U, i.e. the matrix symbol
/// D(xi) = I - c xi^ x xi^ with eigenvalues 1 (transverse) and 1 - c
/// (longitudinal). The zero mode passes through unchanged. c != 1.
SpectralField lame_multiplier_apply(SpectralField spec, double c);
VectorField lame_multiplier_apply(const VectorField& field, double c);

/// Inverse of the above: D^{-1}(xi) = I + (c / (1 - c)) xi^ x xi^.
SpectralField lame_multiplier_solve(SpectralField spec, double c);
VectorField lame_multiplier_solve(const VectorField& field, double c);

}  // namespace fraclame
