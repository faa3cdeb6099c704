#include "fraclame/coefficient.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace fraclame {

void CoefficientClass::validate() const {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("CoefficientClass: alpha must be in (0,1)");
  if (!(lambda > 0.0) || !(Lambda > 0.0))
    throw std::invalid_argument(
        "CoefficientClass: lambda and Lambda must be positive");
}

Coefficient Coefficient::constant(double kappa, const CoefficientClass& cls) {
  cls.validate();
  Coefficient A;
  A.kind_ = Kind::kConstant;
  A.cls_ = cls;
  A.kappa_ = kappa;
  return A;
}

Coefficient Coefficient::separable(const GridSpec& grid, std::vector<double> a,
                                   const CoefficientClass& cls) {
  grid.validate();
  cls.validate();
  if (static_cast<int>(a.size()) != grid.nodes())
    throw std::invalid_argument("Coefficient::separable: profile size");
  Coefficient A;
  A.kind_ = Kind::kSeparable;
  A.grid_ = grid;
  A.cls_ = cls;
  A.a_ = std::move(a);
  return A;
}

Coefficient Coefficient::general(const GridSpec& grid,
                                 std::vector<double> table,
                                 const CoefficientClass& cls) {
  grid.validate();
  cls.validate();
  const std::size_t n = static_cast<std::size_t>(grid.nodes());
  if (table.size() != n * (n + 1) / 2)
    throw std::invalid_argument("Coefficient::general: table size");
  Coefficient A;
  A.kind_ = Kind::kGeneral;
  A.grid_ = grid;
  A.cls_ = cls;
  A.table_ = std::move(table);
  return A;
}

Coefficient Coefficient::sampled(
    const GridSpec& grid,
    const std::function<double(const double*, const double*)>& fn,
    const CoefficientClass& cls) {
  grid.validate();
  const std::size_t n = static_cast<std::size_t>(grid.nodes());
  std::vector<double> table(n * (n + 1) / 2);
  double xi[2], xj[2];
  for (int i = 0; i < grid.nodes(); ++i) {
    grid.node_coords(i, xi);
    for (int j = i; j < grid.nodes(); ++j) {
      grid.node_coords(j, xj);
      const std::size_t ii = static_cast<std::size_t>(i);
      table[ii * n - ii * (ii - 1) / 2 + (j - i)] = fn(xi, xj);
    }
  }
  return general(grid, std::move(table), cls);
}

void Coefficient::require_grid(const GridSpec& grid) const {
  if (grid_free()) return;
  if (!(grid_ == grid))
    throw std::invalid_argument("Coefficient grid does not match field grid");
}

std::vector<double> Coefficient::diagonal_field(const GridSpec& grid) const {
  require_grid(grid);
  std::vector<double> out(grid.nodes());
  for (int i = 0; i < grid.nodes(); ++i)
    out[i] = grid_free() ? kappa_ : diagonal(i);
  return out;
}

const std::vector<double>& Coefficient::separable_profile() const {
  if (kind_ != Kind::kSeparable)
    throw std::invalid_argument("coefficient is not separable");
  return a_;
}

Coefficient read_coefficient_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open coefficient table " + path);
  int dim = 0, N = 0;
  double L = 0.0;
  CoefficientClass cls;
  std::string header;
  if (!std::getline(in, header))
    throw std::runtime_error("coefficient table is empty: " + path);
  {
    std::istringstream hs(header);
    if (!(hs >> dim >> N >> L >> cls.alpha >> cls.lambda >> cls.Lambda))
      throw std::runtime_error("bad coefficient table header: " + path);
  }
  GridSpec grid;
  grid.dim = dim;
  grid.points_per_dim = N;
  grid.box_length = L;
  grid.validate();

  const std::size_t n = static_cast<std::size_t>(grid.nodes());
  std::vector<double> table(n * (n + 1) / 2, 0.0);
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    long i, j;
    double value;
    if (!(ls >> i >> j >> value))
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 'i j value'");
    if (i < 0 || j < 0 || i >= grid.nodes() || j >= grid.nodes())
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": node index out of range");
    if (i > j) std::swap(i, j);
    const std::size_t ii = static_cast<std::size_t>(i);
    table[ii * n - ii * (ii - 1) / 2 + (static_cast<std::size_t>(j) - ii)] =
        value;
  }
  return Coefficient::general(grid, std::move(table), cls);
}

void write_coefficient_table(const std::string& path, const Coefficient& A) {
  if (A.kind() == Coefficient::Kind::kConstant)
    throw std::invalid_argument(
        "write_coefficient_table: constant coefficients have no table grid");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write coefficient table " + path);
  const GridSpec& g = A.grid();
  char buf[64];
  out << g.dim << ' ' << g.points_per_dim << ' ';
  std::snprintf(buf, sizeof buf, "%.17g", g.box_length);
  out << buf << ' ';
  std::snprintf(buf, sizeof buf, "%.17g", A.cls().alpha);
  out << buf << ' ';
  std::snprintf(buf, sizeof buf, "%.17g", A.cls().lambda);
  out << buf << ' ';
  std::snprintf(buf, sizeof buf, "%.17g", A.cls().Lambda);
  out << buf << '\n';
  for (int i = 0; i < g.nodes(); ++i) {
    for (int j = i; j < g.nodes(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", A.eval(i, j));
      out << i << ' ' << j << ' ' << buf << '\n';
    }
  }
}

namespace {

// torus (minimum-image) distance between two nodes
double torus_distance(const GridSpec& g, int i, int j) {
  int ixi, iyi, ixj, iyj;
  g.node_index(i, &ixi, &iyi);
  g.node_index(j, &ixj, &iyj);
  const int n = g.points_per_dim;
  auto wrap = [n](int d) {
    d = ((d % n) + n) % n;
    return d <= n / 2 ? d : d - n;
  };
  const double h = g.spacing();
  const double dx = wrap(ixi - ixj) * h;
  const double dy = g.dim == 2 ? wrap(iyi - iyj) * h : 0.0;
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace

CoefficientReport validate_coefficient(const Coefficient& A, int sample_count,
                                       std::uint64_t seed) {
  if (sample_count < 100)
    throw std::invalid_argument("validate_coefficient: sample_count >= 100");
  if (A.grid_free())
    throw std::invalid_argument(
        "validate_coefficient: constant coefficients need a grid; "
        "use Coefficient::sampled or check the scalar directly");

  const GridSpec& g = A.grid();
  const int n = g.nodes();
  CoefficientReport rep;

  // diagonal bound, checked on every node
  rep.diagonal_inf = A.diagonal(0);
  int diag_witness = 0;
  for (int i = 1; i < n; ++i) {
    const double d = A.diagonal(i);
    if (d < rep.diagonal_inf) {
      rep.diagonal_inf = d;
      diag_witness = i;
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);

  // sup bound and sign flags; exhaustive on small grids
  const bool exhaustive = static_cast<long>(n) * n <= 1 << 20;
  rep.sup_abs = 0.0;
  int sup_i = 0, sup_j = 0;
  auto scan_pair = [&](int i, int j) {
    const double v = A.eval(i, j);
    if (std::abs(v) > rep.sup_abs) {
      rep.sup_abs = std::abs(v);
      sup_i = i;
      sup_j = j;
    }
    if (i != j && v < 0.0) {
      ++rep.negative_offdiagonal_count;
      if (rep.negative_offdiagonal_samples.size() < 5)
        rep.negative_offdiagonal_samples.push_back({i, j, v});
    }
  };
  if (exhaustive) {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) scan_pair(i, j);
  } else {
    for (int t = 0; t < sample_count; ++t) scan_pair(pick(rng), pick(rng));
  }

  // empirical Hoelder quotient sup_z |A(z,x) - A(z,y)| / |x-y|^alpha
  const double alpha = A.cls().alpha;
  for (int t = 0; t < sample_count; ++t) {
    const int z = pick(rng);
    const int x = pick(rng);
    const int y = pick(rng);
    if (x == y) continue;
    const double dist = torus_distance(g, x, y);
    const double q =
        std::abs(A.eval(z, x) - A.eval(z, y)) / std::pow(dist, alpha);
    rep.holder_quotient = std::max(rep.holder_quotient, q);
  }

  const double lambda = A.cls().lambda;
  if (!(rep.diagonal_inf > lambda)) {
    rep.violations.push_back(
        "diagonal bound violated: A(x,x) = " +
        std::to_string(rep.diagonal_inf) + " <= lambda = " +
        std::to_string(lambda) + " at node " + std::to_string(diag_witness));
  }
  if (rep.sup_abs > 1.0 / lambda) {
    rep.violations.push_back(
        "sup bound violated: |A| = " + std::to_string(rep.sup_abs) +
        " > 1/lambda at pair (" + std::to_string(sup_i) + "," +
        std::to_string(sup_j) + ")");
  }
  rep.passed = rep.violations.empty();
  return rep;
}

}  // namespace fraclame
