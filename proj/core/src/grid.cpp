#include "fraclame/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fraclame {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

bool GridSpec::in_support(int node) const {
  const double half = 0.5 * box_length;
  const double margin = 0.5 * support_fraction * box_length;
  double x[2];
  node_coords(node, x);
  for (int d = 0; d < dim; ++d) {
    if (std::abs(x[d] - half) >= margin) return false;
  }
  return true;
}

void GridSpec::validate() const {
  if (dim != 1 && dim != 2)
    throw std::invalid_argument("GridSpec: dim must be 1 or 2");
  if (!power_of_two(points_per_dim) || points_per_dim < 8)
    throw std::invalid_argument(
        "GridSpec: points_per_dim must be a power of two >= 8, got " +
        std::to_string(points_per_dim));
  if (!(box_length > 0.0))
    throw std::invalid_argument("GridSpec: box_length must be positive");
  if (!(support_fraction > 0.0) || support_fraction > 1.0)
    throw std::invalid_argument("GridSpec: support_fraction must be in (0,1]");
  const double cells = support_fraction * points_per_dim;
  if (std::abs(cells - std::round(cells)) > 1e-9)
    throw std::invalid_argument(
        "GridSpec: support_fraction * N must be an integer cell count");
}

double VectorField::component_mean(int comp) const {
  double sum = 0.0;
  const int n = nodes();
  for (int i = 0; i < n; ++i) sum += value(i, comp);
  return sum / n;
}

double VectorField::project_mean_zero() {
  double worst = 0.0;
  const int n = nodes();
  for (int c = 0; c < components(); ++c) {
    const double m = component_mean(c);
    worst = std::max(worst, std::abs(m));
    for (int i = 0; i < n; ++i) value(i, c) -= m;
  }
  return worst;
}

double grid_inner(const VectorField& u, const VectorField& v) {
  u.require_same_grid(v);
  const auto a = u.values();
  const auto b = v.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum * u.grid().cell_volume();
}

double grid_norm_l2(const VectorField& u) {
  return std::sqrt(std::max(0.0, grid_inner(u, u)));
}

double grid_norm_lp(const VectorField& u, double p,
                    const std::vector<std::uint8_t>* mask) {
  if (!(p >= 1.0)) throw std::invalid_argument("grid_norm_lp: p must be >= 1");
  const int n = u.nodes();
  const int d = u.components();
  if (mask && static_cast<int>(mask->size()) != n)
    throw std::invalid_argument("grid_norm_lp: mask size mismatch");
  double sum = 0.0;
  bool any = false;
  for (int i = 0; i < n; ++i) {
    if (mask && !(*mask)[i]) continue;
    any = true;
    double m2 = 0.0;
    for (int c = 0; c < d; ++c) {
      const double v = u.value(i, c);
      m2 += v * v;
    }
    sum += std::pow(m2, 0.5 * p);
  }
  if (mask && !any) throw std::invalid_argument("grid_norm_lp: empty region");
  return std::pow(sum * u.grid().cell_volume(), 1.0 / p);
}

double max_abs(const VectorField& u) {
  double m = 0.0;
  for (double v : u.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const VectorField& u, const VectorField& v) {
  u.require_same_grid(v);
  const auto a = u.values();
  const auto b = v.values();
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

VectorField operator+(const VectorField& u, const VectorField& v) {
  u.require_same_grid(v);
  VectorField out = u;
  auto o = out.values();
  const auto b = v.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += b[i];
  return out;
}

VectorField operator-(const VectorField& u, const VectorField& v) {
  u.require_same_grid(v);
  VectorField out = u;
  auto o = out.values();
  const auto b = v.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] -= b[i];
  return out;
}

VectorField operator*(double a, const VectorField& u) {
  VectorField out = u;
  for (double& v : out.values()) v *= a;
  return out;
}

void axpy(double a, const VectorField& x, VectorField& y) {
  x.require_same_grid(y);
  auto o = y.values();
  const auto b = x.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += a * b[i];
}

}  // namespace fraclame
