#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fraclame/grid.hpp"

namespace fraclame {

/// Claimed class parameters of a kernel weight: alpha-Hoelder modulus
/// Lambda, diagonal lower bound lambda, sup bound 1/lambda.
struct CoefficientClass {
  double alpha = 0.5;   // in (0,1)
  double lambda = 0.5;  // > 0
  double Lambda = 1.0;  // > 0
  void validate() const;
};

/// Symmetric kernel weight A(x, y) on lattice node pairs. Three storage
/// kinds: a constant, the separable form (a(x) + a(y)) / 2, and a general
/// table over unordered node pairs (diagonal included). Symmetry is
/// structural in all three.
class Coefficient {
 public:
  enum class Kind { kConstant, kSeparable, kGeneral };

  static Coefficient constant(double kappa, const CoefficientClass& cls);
  static Coefficient separable(const GridSpec& grid, std::vector<double> a,
                               const CoefficientClass& cls);
  /// `table[pair_index(i,j)]` over unordered pairs i <= j; missing file
  /// entries default to zero when loaded from disk.
  static Coefficient general(const GridSpec& grid, std::vector<double> table,
                             const CoefficientClass& cls);
  /// Samples fn(x, y) into a general table at grid resolution (fn must be
  /// symmetric; the sample uses unordered pairs only).
  static Coefficient sampled(
      const GridSpec& grid,
      const std::function<double(const double*, const double*)>& fn,
      const CoefficientClass& cls);

  Kind kind() const { return kind_; }
  const CoefficientClass& cls() const { return cls_; }
  bool grid_free() const { return kind_ == Kind::kConstant; }
  const GridSpec& grid() const { return grid_; }
  void require_grid(const GridSpec& grid) const;

  double eval(int node_i, int node_j) const {
    switch (kind_) {
      case Kind::kConstant:
        return kappa_;
      case Kind::kSeparable:
        return 0.5 * (a_[node_i] + a_[node_j]);
      case Kind::kGeneral:
      default:
        return table_[pair_index(node_i, node_j)];
    }
  }
  double diagonal(int node) const {
    switch (kind_) {
      case Kind::kConstant:
        return kappa_;
      case Kind::kSeparable:
        return a_[node];
      case Kind::kGeneral:
      default:
        return table_[pair_index(node, node)];
    }
  }
  /// Diagonal restriction A(x, x) as a scalar field over the grid.
  std::vector<double> diagonal_field(const GridSpec& grid) const;

  const std::vector<double>& separable_profile() const;

  std::size_t pair_index(int i, int j) const {
    if (i > j) std::swap(i, j);
    const std::size_t n = static_cast<std::size_t>(grid_.nodes());
    const std::size_t ii = static_cast<std::size_t>(i);
    return ii * n - ii * (ii - 1) / 2 + (static_cast<std::size_t>(j) - ii);
  }

 private:
  Kind kind_ = Kind::kConstant;
  GridSpec grid_;
  CoefficientClass cls_;
  double kappa_ = 1.0;
  std::vector<double> a_;      // separable profile
  std::vector<double> table_;  // general unordered-pair table
};

/// Text table format: header "n N L alpha lambda Lambda", then one line
/// "i j value" per unordered pair. Pairs absent from the file are zero.
Coefficient read_coefficient_table(const std::string& path);
void write_coefficient_table(const std::string& path, const Coefficient& A);

/// validate_coefficient output: measured class quantities plus witnesses
/// of any violated bound. Negative off-diagonal samples are legal and only
/// flagged.
struct CoefficientReport {
  struct PairSample {
    int i = 0;
    int j = 0;
    double value = 0.0;
  };

  bool passed = false;
  double diagonal_inf = 0.0;
  double sup_abs = 0.0;
  double holder_quotient = 0.0;  // sup |A(z,x)-A(z,y)| / |x-y|^alpha sampled
  int negative_offdiagonal_count = 0;
  std::vector<PairSample> negative_offdiagonal_samples;  // first few seen
  std::vector<std::string> violations;
};

/// Checks the class bounds: inf_x A(x,x) > lambda on every grid node,
/// |A| <= 1/lambda on sampled (or, on small grids, all) pairs, and reports
/// the empirical Hoelder quotient over sampled triples. Distances are
/// torus (minimum-image) distances.
CoefficientReport validate_coefficient(const Coefficient& A, int sample_count,
                                       std::uint64_t seed = 12345);

}  // namespace fraclame
