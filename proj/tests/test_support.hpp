#pragma once

// Shared helpers for the unit tests: independent oracle implementations
// (naive DFT, adaptive Simpson quadrature) that deliberately share no code
// with the library paths they check.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "fraclame/grid.hpp"
#include "fraclame/spectral.hpp"

namespace testsupport {

using fraclame::GridSpec;
using fraclame::VectorField;
using Cx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// naive O(M^2) DFT: coefficients c(k) = (1/M) sum_x u(x) e^{-2 pi i k.x/L}
// ---------------------------------------------------------------------------

struct NaiveSpectrum {
  GridSpec grid;
  // per component, indexed like the library's frequency storage
  std::vector<std::vector<Cx>> hat;
};

inline NaiveSpectrum naive_forward(const VectorField& u) {
  const GridSpec& g = u.grid();
  NaiveSpectrum out;
  out.grid = g;
  out.hat.assign(g.dim, std::vector<Cx>(g.nodes(), 0.0));
  fraclame::SpectralField layout(g);
  double x[2] = {0.0, 0.0};
  for (int idx = 0; idx < g.nodes(); ++idx) {
    int kx, ky;
    layout.frequency(idx, &kx, &ky);
    for (int c = 0; c < g.dim; ++c) {
      Cx acc = 0.0;
      for (int i = 0; i < g.nodes(); ++i) {
        g.node_coords(i, x);
        const double arg = -2.0 * kPi *
                           (kx * x[0] + (g.dim == 2 ? ky * x[1] : 0.0)) /
                           g.box_length;
        acc += u.value(i, c) * Cx(std::cos(arg), std::sin(arg));
      }
      out.hat[c][idx] = acc / static_cast<double>(g.nodes());
    }
  }
  return out;
}

inline VectorField naive_inverse(const NaiveSpectrum& spec) {
  const GridSpec& g = spec.grid;
  VectorField out(g);
  fraclame::SpectralField layout(g);
  double x[2] = {0.0, 0.0};
  for (int i = 0; i < g.nodes(); ++i) {
    g.node_coords(i, x);
    for (int c = 0; c < g.dim; ++c) {
      Cx acc = 0.0;
      for (int idx = 0; idx < g.nodes(); ++idx) {
        int kx, ky;
        layout.frequency(idx, &kx, &ky);
        const double arg = 2.0 * kPi *
                           (kx * x[0] + (g.dim == 2 ? ky * x[1] : 0.0)) /
                           g.box_length;
        acc += spec.hat[c][idx] * Cx(std::cos(arg), std::sin(arg));
      }
      out.value(i, c) = acc.real();
    }
  }
  return out;
}

// scalar multiplier (2 pi |k|/L)^t with the zero mode annihilated
inline VectorField naive_frac_laplacian(const VectorField& u, double t) {
  NaiveSpectrum spec = naive_forward(u);
  const GridSpec& g = u.grid();
  fraclame::SpectralField layout(g);
  for (int idx = 0; idx < g.nodes(); ++idx) {
    int kx, ky;
    layout.frequency(idx, &kx, &ky);
    const double k2 = double(kx) * kx + double(ky) * ky;
    const double m =
        k2 == 0.0 ? 0.0
                  : std::pow(2.0 * kPi * std::sqrt(k2) / g.box_length, t);
    for (int c = 0; c < g.dim; ++c) spec.hat[c][idx] *= m;
  }
  return naive_inverse(spec);
}

inline VectorField naive_riesz_matrix(const VectorField& u) {
  NaiveSpectrum spec = naive_forward(u);
  const GridSpec& g = u.grid();
  fraclame::SpectralField layout(g);
  for (int idx = 0; idx < g.nodes(); ++idx) {
    int kx, ky;
    layout.frequency(idx, &kx, &ky);
    const double k2 = double(kx) * kx + double(ky) * ky;
    if (k2 == 0.0) {
      for (int c = 0; c < g.dim; ++c) spec.hat[c][idx] = 0.0;
      continue;
    }
    if (g.dim == 1) {
      spec.hat[0][idx] *= -1.0;
    } else {
      const double ex = kx / std::sqrt(k2);
      const double ey = ky / std::sqrt(k2);
      const Cx proj = ex * spec.hat[0][idx] + ey * spec.hat[1][idx];
      spec.hat[0][idx] = -proj * ex;
      spec.hat[1][idx] = -proj * ey;
    }
  }
  return naive_inverse(spec);
}

// ---------------------------------------------------------------------------
// adaptive Simpson quadrature (for the symbol-constant cross-check)
// ---------------------------------------------------------------------------

inline double adaptive_simpson_rec(const std::function<double(double)>& f,
                                   double a, double b, double fa, double fm,
                                   double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol,
                              depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double tol,
                               int depth = 48) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Independent route to the one-dimensional symbol constant
//   2 int_0^inf (1 - cos v) v^{-1-2s} dv:
// series head, adaptive Simpson per half-period (a single adaptive pass
// over the whole oscillatory range terminates early on aliased panels),
// and a two-term integration-by-parts tail.
inline double oracle_total_constant_1d(double s) {
  const auto f = [s](double v) {
    const double sn = std::sin(0.5 * v);
    return 2.0 * sn * sn * std::pow(v, -1.0 - 2.0 * s);
  };
  const double eps = 1e-4;
  // head by the Taylor series of 1 - cos: v^2/2 - v^4/24 + v^6/720
  const double head = 0.5 * std::pow(eps, 2.0 - 2.0 * s) / (2.0 - 2.0 * s) -
                      std::pow(eps, 4.0 - 2.0 * s) / (24.0 * (4.0 - 2.0 * s)) +
                      std::pow(eps, 6.0 - 2.0 * s) / (720.0 * (6.0 - 2.0 * s));
  const int half_periods = 2000;
  double body = 0.0;
  double lo = eps;
  for (int j = 1; j <= half_periods; ++j) {
    const double hi = kPi * j;
    body += adaptive_simpson(f, lo, hi, 1e-14);
    lo = hi;
  }
  const double V = kPi * half_periods;  // even multiple of pi: sin V = 0
  const double a = 1.0 + 2.0 * s;
  const double tail_main = std::pow(V, 1.0 - a) / (a - 1.0);
  // int_V^inf cos(v) v^{-a} dv ~ -g'(V) + g'''(V)
  const double g1 = -a * std::pow(V, -a - 1.0);
  const double g3 = -a * (a + 1.0) * (a + 2.0) * std::pow(V, -a - 3.0);
  return 2.0 * (head + body + tail_main - (-g1 + g3));
}

// cyclic lattice shift by whole cells
inline VectorField cyclic_shift(const VectorField& u, int sx, int sy) {
  const GridSpec& g = u.grid();
  const int n = g.points_per_dim;
  VectorField out(g);
  for (int i = 0; i < g.nodes(); ++i) {
    int ix, iy;
    g.node_index(i, &ix, &iy);
    const int jx = ((ix + sx) % n + n) % n;
    const int jy = ((iy + sy) % n + n) % n;
    for (int c = 0; c < g.dim; ++c)
      out.value(g.linear_index(jx, jy), c) = u.value(i, c);
  }
  return out;
}

inline GridSpec make_grid(int dim, int n, double box = 1.0,
                          double support = 0.5) {
  GridSpec g;
  g.dim = dim;
  g.points_per_dim = n;
  g.box_length = box;
  g.support_fraction = support;
  return g;
}

}  // namespace testsupport
