#pragma once

#include <stdexcept>
#include <vector>

namespace fraclame {

/// Constants (ell1, ell2) of the coupled-operator symbol
/// (2 pi |xi|)^{2s} (ell1 I + ell2 xi^ x xi^). Both are positive; the
/// associated multiplier parameter is c = -ell2/ell1.
struct LameSymbolConstants {
  enum class Provenance { kDerivedByQuadrature, kUserSupplied };

  double ell1 = 0.0;
  double ell2 = 0.0;
  Provenance provenance = Provenance::kUserSupplied;

  double c() const { return -ell2 / ell1; }
  double total() const { return ell1 + ell2; }

  void validate() const {
    if (!(ell1 > 0.0) || ell2 < 0.0)
      throw std::invalid_argument(
          "LameSymbolConstants: require ell1 > 0 and ell2 >= 0");
  }
};

/// derive_ell_constants output plus the refinement history of the
/// underlying quadratures (one estimate per refinement level).
struct EllDerivation {
  LameSymbolConstants constants;
  std::vector<double> ell1_history;
  std::vector<double> total_history;
  double final_delta = 0.0;  // relative change between the last two levels
};

/// Computes (ell1, ell2) by quadrature of the singular kernel
/// |z|^{-n-2s} (z x z / |z|^2) against plane waves: the longitudinal
/// eigenvalue is (2 pi |xi|)^{2s} (ell1 + ell2), the transverse one
/// (2 pi |xi|)^{2s} ell1. In one dimension the projection is identically
/// one, so the split is fixed by the convention ell2 = 0.
///
/// `resolution` >= 1 selects the number of refinement doublings; throws
/// std::runtime_error when the estimates fail to settle.
EllDerivation derive_ell_constants_detailed(int dim, double s,
                                            int resolution = 4);
LameSymbolConstants derive_ell_constants(int dim, double s,
                                         int resolution = 4);

}  // namespace fraclame
