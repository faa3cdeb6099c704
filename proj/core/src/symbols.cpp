#include "fraclame/symbols.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "fraclame/grid.hpp"

namespace fraclame {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlNode[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr double kGlWeight[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

double gauss16(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double dx = half * kGlNode[i];
    sum += kGlWeight[i] * (f(mid + dx) + f(mid - dx));
  }
  return sum * half;
}

// tanh-sinh quadrature on (a, b); robust for integrable endpoint
// singularities like v^{1-2s} at v = 0. The abscissa is formed as an
// offset from the nearer endpoint (1 -+ tanh u written via exp) so nodes
// close to a singular endpoint keep full relative precision.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 int level) {
  const double half = 0.5 * (b - a);
  const double h = std::pow(2.0, -level);
  double sum = 0.0;
  const int jmax = static_cast<int>(6.0 / h);
  for (int j = -jmax; j <= jmax; ++j) {
    const double t = j * h;
    const double u = 0.5 * kPi * std::sinh(t);
    const double e2 = std::exp(-2.0 * std::abs(u));
    const double delta = half * 2.0 * e2 / (1.0 + e2);  // half * (1 -+ tanh u)
    if (delta <= 0.0) continue;
    const double xx = u >= 0.0 ? b - delta : a + delta;
    if (xx <= a || xx >= b) continue;
    const double w = 0.5 * kPi * std::cosh(t) / std::pow(std::cosh(u), 2);
    const double fx = f(xx);
    if (!std::isfinite(fx)) continue;
    sum += w * fx;
  }
  return sum * half * h;
}

// C1(s) = int_0^inf (1 - cos v) v^{-1-2s} dv, split into a singular head,
// per-period smooth panels, and an analytic oscillatory tail obtained by
// integrating by parts twice at V = 2 pi m (where sin V = 0, cos V = 1).
double radial_constant(double s, int level) {
  // 1 - cos v written as 2 sin^2(v/2): no cancellation near v = 0, where
  // the tanh-sinh nodes cluster
  const auto integrand = [s](double v) {
    const double sn = std::sin(0.5 * v);
    return 2.0 * sn * sn * std::pow(v, -1.0 - 2.0 * s);
  };
  const double head = tanh_sinh(integrand, 0.0, 2.0 * kPi, level + 4);

  const int periods = 256 << level;
  double body = 0.0;
  for (int j = 1; j < periods; ++j)
    body += gauss16(integrand, 2.0 * kPi * j, 2.0 * kPi * (j + 1));

  const double V = 2.0 * kPi * periods;
  const double a = 1.0 + 2.0 * s;
  // int_V^inf v^{-a} dv - int_V^inf cos(v) v^{-a} dv,
  // the cosine part ~ -g'(V) + g'''(V) with g = v^{-a}.
  const double tail_main = std::pow(V, 1.0 - a) / (a - 1.0);
  const double g1 = -a * std::pow(V, -a - 1.0);
  const double g3 = -a * (a + 1.0) * (a + 2.0) * std::pow(V, -a - 3.0);
  const double tail_cos = -g1 + g3;
  return head + body + tail_main - tail_cos;
}

// Angular factors of the 2-D kernel in polar coordinates.
double angular_transverse(double s, int level) {
  const auto f = [s](double th) {
    const double c = std::cos(th);
    const double sn = std::sin(th);
    return sn * sn * std::pow(std::abs(c), 2.0 * s);
  };
  return 4.0 * tanh_sinh(f, 0.0, 0.5 * kPi, level + 3);
}

double angular_longitudinal(double s, int level) {
  const auto f = [s](double th) {
    return std::pow(std::abs(std::cos(th)), 2.0 * s + 2.0);
  };
  return 4.0 * tanh_sinh(f, 0.0, 0.5 * kPi, level + 3);
}

}  // namespace

EllDerivation derive_ell_constants_detailed(int dim, double s,
                                            int resolution) {
  if (dim != 1 && dim != 2)
    throw std::invalid_argument("derive_ell_constants: dim must be 1 or 2");
  if (!(s > 0.0) || !(s < 1.0))
    throw std::invalid_argument("derive_ell_constants: s must be in (0,1)");
  if (resolution < 1) resolution = 1;

  EllDerivation out;
  for (int level = 0; level <= resolution; ++level) {
    const double c1 = radial_constant(s, level);
    double ell1, total;
    if (dim == 1) {
      // z x z / |z|^2 == 1: only the total constant is identifiable.
      total = 2.0 * c1;
      ell1 = total;
    } else {
      ell1 = c1 * angular_transverse(s, level);
      total = c1 * angular_longitudinal(s, level);
    }
    out.ell1_history.push_back(ell1);
    out.total_history.push_back(total);
  }

  const std::size_t n = out.total_history.size();
  const double last = out.total_history[n - 1];
  const double prev = out.total_history[n - 2];
  out.final_delta = std::abs(last - prev) / std::abs(last);
  const double delta1 = std::abs(out.ell1_history[n - 1] -
                                 out.ell1_history[n - 2]) /
                        std::abs(out.ell1_history[n - 1]);
  if (out.final_delta > 1e-9 || delta1 > 1e-9)
    throw std::runtime_error(
        "derive_ell_constants: quadrature did not converge (delta=" +
        std::to_string(out.final_delta) + ")");

  out.constants.ell1 = out.ell1_history[n - 1];
  out.constants.ell2 =
      dim == 1 ? 0.0 : out.total_history[n - 1] - out.ell1_history[n - 1];
  out.constants.provenance =
      LameSymbolConstants::Provenance::kDerivedByQuadrature;
  out.constants.validate();
  return out;
}

LameSymbolConstants derive_ell_constants(int dim, double s, int resolution) {
  return derive_ell_constants_detailed(dim, s, resolution).constants;
}

}  // namespace fraclame
