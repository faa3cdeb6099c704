#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace fraclame {

inline constexpr double kPi = 3.14159265358979323846;

/// Periodic lattice with N nodes per axis covering the torus [0, L)^dim.
/// Fields of interest live in the centered sub-box of side
/// support_fraction * L; the remainder of the box is zero padding so that
/// torus interactions stand in for free-space ones.
struct GridSpec {
  int dim = 1;             // 1 or 2
  int points_per_dim = 64; // N, power of two, >= 8
  double box_length = 1.0; // L
  double support_fraction = 0.5;

  int nodes() const {
    return dim == 1 ? points_per_dim : points_per_dim * points_per_dim;
  }
  double spacing() const { return box_length / points_per_dim; }
  double cell_volume() const { return std::pow(spacing(), dim); }
  double volume() const { return std::pow(box_length, dim); }

  /// Linear node index -> lattice coordinates (ix[, iy]).
  void node_index(int node, int* ix, int* iy) const {
    if (dim == 1) {
      *ix = node;
      *iy = 0;
    } else {
      *ix = node / points_per_dim;
      *iy = node % points_per_dim;
    }
  }
  int linear_index(int ix, int iy) const {
    return dim == 1 ? ix : ix * points_per_dim + iy;
  }
  /// Physical coordinates of a node; x[dim] filled.
  void node_coords(int node, double* x) const {
    int ix, iy;
    node_index(node, &ix, &iy);
    const double h = spacing();
    x[0] = ix * h;
    if (dim == 2) x[1] = iy * h;
  }

  /// True when the node lies in the centered support sub-box.
  bool in_support(int node) const;

  bool operator==(const GridSpec&) const = default;

  /// Throws std::invalid_argument on violated invariants.
  void validate() const;
};

/// Real vector field sampled on the lattice: `dim` components per node,
/// stored node-major (components of one node are adjacent).
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(const GridSpec& grid)
      : grid_(grid),
        values_(static_cast<std::size_t>(grid.nodes()) * grid.dim, 0.0) {}

  const GridSpec& grid() const { return grid_; }
  int components() const { return grid_.dim; }
  int nodes() const { return grid_.nodes(); }

  double value(int node, int comp) const {
    return values_[static_cast<std::size_t>(node) * grid_.dim + comp];
  }
  double& value(int node, int comp) {
    return values_[static_cast<std::size_t>(node) * grid_.dim + comp];
  }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  /// Set when an operator with a non-invertible zero mode discarded a
  /// nonzero mean from its input.
  bool dropped_zero_mode() const { return dropped_zero_mode_; }
  void set_dropped_zero_mode(bool flag) { dropped_zero_mode_ = flag; }

  double component_mean(int comp) const;
  /// Subtracts the per-component mean in place; returns the largest
  /// absolute mean that was removed.
  double project_mean_zero();

  void require_same_grid(const VectorField& other) const {
    if (!(grid_ == other.grid_))
      throw std::invalid_argument("vector fields live on different grids");
  }

 private:
  GridSpec grid_;
  std::vector<double> values_;
  bool dropped_zero_mode_ = false;
};

// Grid-weighted algebra: inner products and norms carry the cell volume
// h^dim so they approximate their continuum counterparts.
double grid_inner(const VectorField& u, const VectorField& v);
double grid_norm_l2(const VectorField& u);
/// (h^n sum |u(x)|^p)^(1/p) with |.| the Euclidean norm per node; the
/// optional mask restricts the sum.
double grid_norm_lp(const VectorField& u, double p,
                    const std::vector<std::uint8_t>* mask = nullptr);
double max_abs(const VectorField& u);
double max_abs_diff(const VectorField& u, const VectorField& v);

VectorField operator+(const VectorField& u, const VectorField& v);
VectorField operator-(const VectorField& u, const VectorField& v);
VectorField operator*(double a, const VectorField& u);
/// y += a * x
void axpy(double a, const VectorField& x, VectorField& y);

}  // namespace fraclame
