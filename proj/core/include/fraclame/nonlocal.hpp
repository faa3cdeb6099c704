#pragma once

#include <vector>

#include "fraclame/coefficient.hpp"
#include "fraclame/grid.hpp"

namespace fraclame {

/// Exponent bundle of the fractional problems. The admissible window for
/// the comparison split is s <= t < min{2s, 1}; s1 + s2 = 2s; epsilon
/// below s2; sigma at most the coefficient's Hoelder exponent.
struct FractionalParams {
  double s = 0.5;
  double t = 0.5;
  double s1 = 0.5;
  double s2 = 0.5;
  double epsilon = 0.0;
  double sigma = 0.5;

  /// Returns human-readable violations (empty when admissible); alpha is
  /// the Hoelder exponent the sigma bound refers to.
  std::vector<std::string> violations(double alpha) const;
  void validate(double alpha) const;  // throws on the first violation
};

/// Quadrature of the singular pair sums. The diagonal x = y is always
/// omitted; the exterior of the lattice window is either ignored or
/// replaced by the closed-form spherical-average correction
///   A(x,x) * omega_{n-1}/n * R^{-2s} / (2s)
/// per node, with R the tail radius (>= half the box diagonal).
struct QuadratureSpec {
  enum class DiagonalPolicy { kOmit };
  enum class TailPolicy { kAnalytic, kNone };

  DiagonalPolicy diagonal_policy = DiagonalPolicy::kOmit;
  TailPolicy tail_policy = TailPolicy::kAnalytic;
  /// Tail radius in units of the box length; 0 selects the default
  /// sqrt(dim)/2 (half the box diagonal).
  double tail_radius_boxes = 0.0;

  double tail_radius(const GridSpec& grid) const;
  /// Per-node tail coefficient omega_{n-1}/n * R^{-2s}/(2s) for the
  /// projected form; the full (unprojected) form multiplies by n.
  double tail_coefficient(const GridSpec& grid, double s) const;
  void validate(const GridSpec& grid) const;
};

/// The pair form
///   B_A(u, v) = sum_{unordered pairs} h^{2n} A(x,y) |x-y|^{-n-2s}
///                 [(u(y)-u(x)).e][(v(y)-v(x)).e],    e = (y-x)/|y-x|,
/// over minimum-image torus displacements, plus the tail correction. It
/// discretizes the pairing <L_A^s u, v> and is symmetric in (u, v) for
/// symmetric A.
double bilinear_form(const Coefficient& A, double s, const VectorField& u,
                     const VectorField& v, const QuadratureSpec& quad = {});

/// Row evaluation of the same form:
///   (L u)(x) = h^n sum_{y != x} A(x,y) |x-y|^{-n-2s} P(x-y) (u(x)-u(y))
///              + tail(x),
/// so that <apply_operator(u), v>_grid = bilinear_form(u, v) up to
/// rounding. Dense O(M^2) path, parallel over rows.
VectorField apply_operator(const Coefficient& A, double s,
                           const VectorField& u,
                           const QuadratureSpec& quad = {});

/// Fast path for separable coefficients A(x,y) = (a(x)+a(y))/2: the double
/// sum splits into cyclic convolutions against the fixed matrix kernel
/// W(z) = |z|^{-n-2s} P(z), evaluated with FFTs in O(N^n log N).
VectorField separable_fast_apply(const std::vector<double>& a, double s,
                                 const VectorField& u,
                                 const QuadratureSpec& quad = {});
/// Same, taking the profile from a separable Coefficient; rejects other
/// kinds.
VectorField separable_fast_apply(const Coefficient& A, double s,
                                 const VectorField& u,
                                 const QuadratureSpec& quad = {});

/// E(u) = 1/2 B_A(u, u) - <f, u>_grid.
double energy(const Coefficient& A, double s, const VectorField& u,
              const VectorField& f, const QuadratureSpec& quad = {});

/// B_1(u, u) with A == 1: the projected-difference seminorm squared.
double projected_seminorm(const VectorField& u, double s,
                          const QuadratureSpec& quad = {});

/// Unprojected companion sum_{pairs} h^{2n} |u(y)-u(x)|^2 / |x-y|^{n+2s}
/// (+ tail); the discrete vector Gagliardo seminorm squared.
double gagliardo_seminorm(const VectorField& u, double s,
                          const QuadratureSpec& quad = {});

}  // namespace fraclame
