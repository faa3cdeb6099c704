#include "fraclame/nonlocal.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "fraclame/fft.hpp"
#include "fraclame/parallel.hpp"

namespace fraclame {

namespace {

double sphere_measure(int dim) { return dim == 1 ? 2.0 : 2.0 * kPi; }

// Matrix kernel W(z) = |z|^{-n-2s} (z x z / |z|^2) tabulated over all
// minimum-image lattice displacements; the zero displacement is zero.
// Components: 1D {w}, 2D {wxx, wxy, wyy}.
struct KernelTable {
  GridSpec grid;
  int comps = 1;
  std::vector<double> w;  // comps values per displacement index

  double entry(int disp, int c) const { return w[disp * comps + c]; }
};

KernelTable build_kernel_table(const GridSpec& grid, double s) {
  KernelTable table;
  table.grid = grid;
  table.comps = grid.dim == 1 ? 1 : 3;
  const int n = grid.points_per_dim;
  const double h = grid.spacing();
  table.w.assign(static_cast<std::size_t>(grid.nodes()) * table.comps, 0.0);
  auto signed_offset = [n](int m) { return m <= n / 2 ? m : m - n; };
  for (int d = 0; d < grid.nodes(); ++d) {
    int mx, my;
    grid.node_index(d, &mx, &my);
    const double zx = signed_offset(mx) * h;
    const double zy = grid.dim == 2 ? signed_offset(my) * h : 0.0;
    const double r2 = zx * zx + zy * zy;
    if (r2 == 0.0) continue;
    const double base = std::pow(r2, -0.5 * (grid.dim + 2.0 * s));
    if (grid.dim == 1) {
      table.w[d] = base;
    } else {
      // a half-period offset has two equidistant images (+-L/2); the
      // squared entries agree on both, the cross term averages to zero
      const bool tie = mx == n / 2 || my == n / 2;
      table.w[d * 3 + 0] = base * zx * zx / r2;
      table.w[d * 3 + 1] = tie ? 0.0 : base * zx * zy / r2;
      table.w[d * 3 + 2] = base * zy * zy / r2;
    }
  }
  return table;
}

// displacement index of node pair (i, j): componentwise (i - j) mod N
int displacement_index(const GridSpec& grid, int i, int j) {
  const int n = grid.points_per_dim;
  int ixi, iyi, ixj, iyj;
  grid.node_index(i, &ixi, &iyi);
  grid.node_index(j, &ixj, &iyj);
  const int dx = ((ixi - ixj) % n + n) % n;
  if (grid.dim == 1) return dx;
  const int dy = ((iyi - iyj) % n + n) % n;
  return dx * n + dy;
}

void check_s(double s) {
  if (!(s > 0.0) || !(s < 1.0))
    throw std::invalid_argument("nonlocal operator: s must be in (0,1)");
}

// Accumulates W(z_ij) (u_i - u_j) into acc[dim].
inline void kernel_times_difference(const KernelTable& t, int disp,
                                    const VectorField& u, int i, int j,
                                    double* acc) {
  if (t.grid.dim == 1) {
    acc[0] += t.w[disp] * (u.value(i, 0) - u.value(j, 0));
    return;
  }
  const double dx0 = u.value(i, 0) - u.value(j, 0);
  const double dx1 = u.value(i, 1) - u.value(j, 1);
  const double* w = &t.w[static_cast<std::size_t>(disp) * 3];
  acc[0] += w[0] * dx0 + w[1] * dx1;
  acc[1] += w[1] * dx0 + w[2] * dx1;
}

// (du . e)(dv . e) |z|^{-n-2s} = du^T W dv
inline double pair_energy(const KernelTable& t, int disp,
                          const VectorField& u, const VectorField& v, int i,
                          int j) {
  if (t.grid.dim == 1) {
    return t.w[disp] * (u.value(j, 0) - u.value(i, 0)) *
           (v.value(j, 0) - v.value(i, 0));
  }
  const double du0 = u.value(j, 0) - u.value(i, 0);
  const double du1 = u.value(j, 1) - u.value(i, 1);
  const double dv0 = v.value(j, 0) - v.value(i, 0);
  const double dv1 = v.value(j, 1) - v.value(i, 1);
  const double* w = &t.w[static_cast<std::size_t>(disp) * 3];
  return du0 * (w[0] * dv0 + w[1] * dv1) + du1 * (w[1] * dv0 + w[2] * dv1);
}

}  // namespace

std::vector<std::string> FractionalParams::violations(double alpha) const {
  std::vector<std::string> out;
  if (!(s > 0.0) || !(s < 1.0)) out.push_back("s must lie in (0,1)");
  const double upper = std::min(2.0 * s, 1.0);
  if (!(t >= s) || !(t < upper))
    out.push_back("t violates the admissible range s <= t < min{2s,1}");
  if (std::abs(s1 + s2 - 2.0 * s) > 1e-12)
    out.push_back("s1 + s2 must equal 2s");
  if (epsilon < 0.0 || epsilon >= s2)
    out.push_back("epsilon must satisfy 0 <= epsilon < s2");
  if (!(sigma > 0.0) || sigma > alpha)
    out.push_back("sigma must satisfy 0 < sigma <= alpha");
  return out;
}

void FractionalParams::validate(double alpha) const {
  const std::vector<std::string> bad = violations(alpha);
  if (!bad.empty()) throw std::invalid_argument("FractionalParams: " + bad.front());
}

double QuadratureSpec::tail_radius(const GridSpec& grid) const {
  const double boxes =
      tail_radius_boxes > 0.0 ? tail_radius_boxes : 0.5 * std::sqrt(grid.dim);
  return boxes * grid.box_length;
}

double QuadratureSpec::tail_coefficient(const GridSpec& grid,
                                        double s) const {
  if (tail_policy == TailPolicy::kNone) return 0.0;
  const double R = tail_radius(grid);
  return sphere_measure(grid.dim) / grid.dim * std::pow(R, -2.0 * s) /
         (2.0 * s);
}

void QuadratureSpec::validate(const GridSpec& grid) const {
  if (tail_policy == TailPolicy::kAnalytic && tail_radius_boxes > 0.0 &&
      tail_radius_boxes < 0.5 * std::sqrt(grid.dim) - 1e-12)
    throw std::invalid_argument(
        "QuadratureSpec: analytic tail needs tail_radius >= half the box "
        "diagonal");
}

double bilinear_form(const Coefficient& A, double s, const VectorField& u,
                     const VectorField& v, const QuadratureSpec& quad) {
  check_s(s);
  u.require_same_grid(v);
  const GridSpec& grid = u.grid();
  A.require_grid(grid);
  quad.validate(grid);

  const KernelTable table = build_kernel_table(grid, s);
  const int n = grid.nodes();
  const double hn = grid.cell_volume();

  double sum = parallel_sum(0, n, [&](int i) {
    double local = 0.0;
    for (int j = i + 1; j < n; ++j)
      local += A.eval(i, j) * pair_energy(table, displacement_index(grid, i, j),
                                          u, v, i, j);
    return local;
  });
  sum *= hn * hn;

  const double tc = quad.tail_coefficient(grid, s);
  if (tc != 0.0) {
    double tail = 0.0;
    for (int i = 0; i < n; ++i) {
      double uv = 0.0;
      for (int c = 0; c < grid.dim; ++c) uv += u.value(i, c) * v.value(i, c);
      tail += A.diagonal(i) * uv;
    }
    sum += tc * hn * tail;
  }
  return sum;
}

VectorField apply_operator(const Coefficient& A, double s,
                           const VectorField& u, const QuadratureSpec& quad) {
  check_s(s);
  const GridSpec& grid = u.grid();
  A.require_grid(grid);
  quad.validate(grid);

  const KernelTable table = build_kernel_table(grid, s);
  const int n = grid.nodes();
  const double hn = grid.cell_volume();
  const double tc = quad.tail_coefficient(grid, s);

  VectorField out(grid);
  parallel_for(0, n, [&](int i) {
    double acc[2] = {0.0, 0.0};
    if (A.kind() == Coefficient::Kind::kConstant) {
      // pull the constant out of the row sum
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        kernel_times_difference(table, displacement_index(grid, i, j), u, i,
                                j, acc);
      }
      const double kappa = A.eval(0, 0);
      for (int c = 0; c < grid.dim; ++c) acc[c] *= kappa;
    } else {
      double part[2];
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        part[0] = part[1] = 0.0;
        kernel_times_difference(table, displacement_index(grid, i, j), u, i,
                                j, part);
        const double aij = A.eval(i, j);
        acc[0] += aij * part[0];
        acc[1] += aij * part[1];
      }
    }
    const double diag = tc * A.diagonal(i);
    for (int c = 0; c < grid.dim; ++c)
      out.value(i, c) = hn * acc[c] + diag * u.value(i, c);
  });
  return out;
}

namespace {

using Complex = std::complex<double>;

// cyclic convolution set for the separable fast path; all transforms are
// raw (unnormalized) scalar FFTs over the grid
struct ScalarSpectrum {
  std::vector<Complex> data;
};

ScalarSpectrum fft_of(const GridSpec& grid, const std::vector<double>& field) {
  ScalarSpectrum out;
  out.data.assign(field.begin(), field.end());
  fft_inplace(grid, out.data, 1, -1);
  return out;
}

std::vector<double> ifft_product(const GridSpec& grid,
                                 const ScalarSpectrum& a,
                                 const ScalarSpectrum& b) {
  std::vector<Complex> prod(a.data.size());
  for (std::size_t i = 0; i < prod.size(); ++i)
    prod[i] = a.data[i] * b.data[i];
  fft_inplace(grid, prod, 1, +1);
  std::vector<double> out(prod.size());
  const double scale = 1.0 / grid.nodes();
  for (std::size_t i = 0; i < prod.size(); ++i)
    out[i] = prod[i].real() * scale;
  return out;
}

}  // namespace

VectorField separable_fast_apply(const std::vector<double>& a, double s,
                                 const VectorField& u,
                                 const QuadratureSpec& quad) {
  check_s(s);
  const GridSpec& grid = u.grid();
  quad.validate(grid);
  const int n = grid.nodes();
  if (static_cast<int>(a.size()) != n)
    throw std::invalid_argument("separable_fast_apply: profile size");
  const int dim = grid.dim;
  const int kcomps = dim == 1 ? 1 : 3;

  // kernel W(z) laid out per component as scalar lattice functions of the
  // (cyclic) displacement; conv(W_ab, v)(x) = sum_z W_ab(z) v(x - z)
  const KernelTable table = build_kernel_table(grid, s);
  std::vector<ScalarSpectrum> what(kcomps);
  std::vector<double> s0(kcomps, 0.0);  // plain kernel sums
  {
    std::vector<double> scratch(n);
    for (int c = 0; c < kcomps; ++c) {
      for (int d = 0; d < n; ++d) {
        scratch[d] = table.entry(d, c);
        s0[c] += scratch[d];
      }
      what[c] = fft_of(grid, scratch);
    }
  }

  // transforms of a, u_b and (a u)_b
  std::vector<double> scratch(n);
  ScalarSpectrum ahat;
  {
    scratch = a;
    ahat = fft_of(grid, scratch);
  }
  std::vector<ScalarSpectrum> uhat(dim), auhat(dim);
  for (int c = 0; c < dim; ++c) {
    for (int i = 0; i < n; ++i) scratch[i] = u.value(i, c);
    uhat[c] = fft_of(grid, scratch);
    for (int i = 0; i < n; ++i) scratch[i] *= a[i];
    auhat[c] = fft_of(grid, scratch);
  }

  auto kernel_component = [kcomps](int r, int c) {
    return kcomps == 1 ? 0 : (r == 0 ? (c == 0 ? 0 : 1) : (c == 0 ? 1 : 2));
  };

  // (W * v)_r = sum_c conv(W_rc, v_c) for v in {u, a u}; M_a = conv(W, a)
  std::vector<std::vector<double>> conv_u(dim), conv_au(dim), ma(kcomps);
  for (int r = 0; r < dim; ++r) {
    conv_u[r].assign(n, 0.0);
    conv_au[r].assign(n, 0.0);
    for (int c = 0; c < dim; ++c) {
      const auto& wk = what[kernel_component(r, c)];
      const auto cu = ifft_product(grid, wk, uhat[c]);
      const auto cau = ifft_product(grid, wk, auhat[c]);
      for (int i = 0; i < n; ++i) {
        conv_u[r][i] += cu[i];
        conv_au[r][i] += cau[i];
      }
    }
  }
  for (int c = 0; c < kcomps; ++c) ma[c] = ifft_product(grid, what[c], ahat);

  const double hn = grid.cell_volume();
  const double tc = quad.tail_coefficient(grid, s);
  VectorField out(grid);
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < dim; ++r) {
      // S0 u and M_a u are matrix-vector products at the node
      double s0u = 0.0, mau = 0.0;
      for (int c = 0; c < dim; ++c) {
        const int kc = kernel_component(r, c);
        s0u += s0[kc] * u.value(i, c);
        mau += ma[kc][i] * u.value(i, c);
      }
      const double row = 0.5 * a[i] * (s0u - conv_u[r][i]) +
                         0.5 * (mau - conv_au[r][i]);
      out.value(i, r) = hn * row + tc * a[i] * u.value(i, r);
    }
  }
  return out;
}

VectorField separable_fast_apply(const Coefficient& A, double s,
                                 const VectorField& u,
                                 const QuadratureSpec& quad) {
  if (A.kind() != Coefficient::Kind::kSeparable)
    throw std::invalid_argument(
        "separable_fast_apply: coefficient is not separable");
  A.require_grid(u.grid());
  return separable_fast_apply(A.separable_profile(), s, u, quad);
}

double energy(const Coefficient& A, double s, const VectorField& u,
              const VectorField& f, const QuadratureSpec& quad) {
  return 0.5 * bilinear_form(A, s, u, u, quad) - grid_inner(f, u);
}

double projected_seminorm(const VectorField& u, double s,
                          const QuadratureSpec& quad) {
  CoefficientClass cls;
  return bilinear_form(Coefficient::constant(1.0, cls), s, u, u, quad);
}

double gagliardo_seminorm(const VectorField& u, double s,
                          const QuadratureSpec& quad) {
  check_s(s);
  const GridSpec& grid = u.grid();
  quad.validate(grid);
  const KernelTable table = build_kernel_table(grid, s);
  const int n = grid.nodes();
  const double hn = grid.cell_volume();
  const int comps = table.comps;

  double sum = parallel_sum(0, n, [&](int i) {
    double local = 0.0;
    for (int j = i + 1; j < n; ++j) {
      const int d = displacement_index(grid, i, j);
      // |z|^{-n-2s} = trace of W in 1D, wxx + wyy in 2D
      const double base =
          comps == 1 ? table.w[d] : table.w[d * 3] + table.w[d * 3 + 2];
      double du2 = 0.0;
      for (int c = 0; c < grid.dim; ++c) {
        const double dv = u.value(j, c) - u.value(i, c);
        du2 += dv * dv;
      }
      local += base * du2;
    }
    return local;
  });
  sum *= hn * hn;

  // unprojected tail: spherical average of the identity is the identity
  const double tc = quad.tail_coefficient(grid, s) * grid.dim;
  if (tc != 0.0) {
    double tail = 0.0;
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < grid.dim; ++c)
        tail += u.value(i, c) * u.value(i, c);
    sum += tc * hn * tail;
  }
  return sum;
}

}  // namespace fraclame
