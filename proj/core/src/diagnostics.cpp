#include "fraclame/diagnostics.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "fraclame/random_fields.hpp"
#include "fraclame/spectral.hpp"

namespace fraclame {

namespace {

void check_split(double s1, double s2) {
  if (!(s1 > 0.0) || !(s1 < 2.0) || !(s2 > 0.0) || !(s2 < 2.0))
    throw std::invalid_argument("commutator: s1, s2 must lie in (0,2)");
  const double s = 0.5 * (s1 + s2);
  if (!(s > 0.0) || !(s < 1.0))
    throw std::invalid_argument("commutator: (s1+s2)/2 must lie in (0,1)");
}

VectorField pointwise_scale(const std::vector<double>& a,
                            const VectorField& u) {
  VectorField out = u;
  for (int i = 0; i < u.nodes(); ++i)
    for (int c = 0; c < u.components(); ++c) out.value(i, c) *= a[i];
  return out;
}

}  // namespace

double comparison_form(const std::vector<double>& a_diag,
                       const VectorField& u, const VectorField& phi,
                       double s1, double s2,
                       const LameSymbolConstants& consts) {
  check_split(s1, s2);
  u.require_same_grid(phi);
  consts.validate();
  if (static_cast<int>(a_diag.size()) != u.nodes())
    throw std::invalid_argument("comparison_form: diagonal field size");

  const VectorField U = frac_laplacian(u, s1);
  const VectorField V = frac_laplacian(phi, s2);
  // (ell1 I + ell2 P) U = ell1 U - ell2 (R x R) U
  VectorField W = riesz_matrix_apply(U);
  const int n = u.nodes();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double dot = 0.0;
    for (int c = 0; c < u.components(); ++c)
      dot += (consts.ell1 * U.value(i, c) - consts.ell2 * W.value(i, c)) *
             V.value(i, c);
    sum += a_diag[i] * dot;
  }
  return sum * u.grid().cell_volume();
}

double commutator_d2(const std::vector<double>& a_diag, const VectorField& u,
                     const VectorField& phi, double s1, double s2,
                     const LameSymbolConstants& consts) {
  check_split(s1, s2);
  u.require_same_grid(phi);
  consts.validate();
  if (static_cast<int>(a_diag.size()) != u.nodes())
    throw std::invalid_argument("commutator_d2: diagonal field size");

  const VectorField U = frac_laplacian(u, s1);
  const VectorField V = frac_laplacian(phi, s2);
  const VectorField commutator =
      riesz_matrix_apply(pointwise_scale(a_diag, U)) -
      pointwise_scale(a_diag, riesz_matrix_apply(U));
  return -consts.ell2 * grid_inner(commutator, V);
}

CommutatorBreakdown commutator_breakdown(const Coefficient& A,
                                         const VectorField& u,
                                         const VectorField& phi, double s1,
                                         double s2,
                                         const LameSymbolConstants& consts,
                                         const QuadratureSpec& quad) {
  const double s = 0.5 * (s1 + s2);
  const std::vector<double> a_diag = A.diagonal_field(u.grid());
  CommutatorBreakdown out;
  out.total = bilinear_form(A, s, u, phi, quad) -
              comparison_form(a_diag, u, phi, s1, s2, consts);
  out.d2 = commutator_d2(a_diag, u, phi, s1, s2, consts);
  out.d1 = out.total - out.d2;
  return out;
}

double commutator_total(const Coefficient& A, const VectorField& u,
                        const VectorField& phi, double s1, double s2,
                        const LameSymbolConstants& consts,
                        const QuadratureSpec& quad) {
  return commutator_breakdown(A, u, phi, s1, s2, consts, quad).total;
}

DecayTable commutator_decay_experiment(const Coefficient& A,
                                       const GridSpec& grid, double s1,
                                       double s2,
                                       std::span<const int> frequencies,
                                       const LameSymbolConstants& consts,
                                       const QuadratureSpec& quad) {
  if (frequencies.empty())
    throw std::invalid_argument("decay experiment: no frequencies");
  grid.validate();
  A.require_grid(grid);

  DecayTable table;
  for (int k : frequencies) {
    if (k < 1 || k >= grid.points_per_dim / 2)
      throw std::invalid_argument("decay experiment: frequency out of range");
    // the generic phase offset keeps both the even/odd and the
    // self-adjoint cancellations away (u = phi would zero the d2 pairing)
    const VectorField u = longitudinal_wave(grid, k, 0);
    const VectorField phi = longitudinal_wave(grid, k, 0, 0.7);
    const CommutatorBreakdown br =
        commutator_breakdown(A, u, phi, s1, s2, consts, quad);
    const double nu = grid_norm_l2(frac_laplacian(u, s1));
    const double nv = grid_norm_l2(frac_laplacian(phi, s2));
    DecayRow row;
    row.frequency = k;
    row.total = std::abs(br.total) / (nu * nv);
    row.d1 = std::abs(br.d1) / (nu * nv);
    row.d2 = std::abs(br.d2) / (nu * nv);
    table.rows.push_back(row);
  }

  // least-squares slope of log|total| vs log k
  const int m = static_cast<int>(table.rows.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const DecayRow& row : table.rows) {
    const double x = std::log(static_cast<double>(row.frequency));
    const double y = std::log(std::max(row.total, 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  table.slope_total = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return table;
}

double sobolev_lp_norm(const VectorField& u, double t, double p,
                       const std::vector<std::uint8_t>& region) {
  if (static_cast<int>(region.size()) != u.nodes())
    throw std::invalid_argument("sobolev_lp_norm: region size mismatch");
  bool any = false;
  for (auto b : region) any |= b != 0;
  if (!any) throw std::invalid_argument("sobolev_lp_norm: empty region");
  return grid_norm_lp(frac_laplacian(u, t), p, &region);
}

RegularityReport regularity_experiment(const RegularityConfig& config) {
  if (!config.coefficient || !config.f1 || !config.f2)
    throw std::invalid_argument("regularity_experiment: missing builders");
  if (!(config.s > 0.0) || !(config.s < 1.0) || !(config.t >= config.s) ||
      !(config.t < std::min(2.0 * config.s, 1.0)))
    throw std::invalid_argument(
        "regularity_experiment: require s in (0,1), s <= t < min{2s,1}");

  RegularityReport report;
  for (int N : config.grid_sizes) {
    GridSpec grid;
    grid.dim = config.dim;
    grid.points_per_dim = N;
    grid.box_length = config.box_length;
    grid.support_fraction = config.support_fraction;
    grid.validate();

    const DomainMask mask = DomainMask::centered_box(
        grid, config.omega_fraction, config.probe_fraction);
    const Coefficient A = config.coefficient(grid);
    const VectorField f1 = config.f1(grid);
    const VectorField f2 = config.f2(grid);

    const double ts2 = 2.0 * config.s - config.t;
    const VectorField data = frac_laplacian(f1, ts2) + f2;
    const SolveReport solve = solve_dirichlet(A, config.s, data, mask,
                                              config.tol, config.max_iter);
    if (solve.status != SolveStatus::kConverged)
      throw std::runtime_error(
          "regularity_experiment: Dirichlet solve did not converge at N = " +
          std::to_string(N));
    const VectorField& u = solve.solution;

    const double lhs =
        sobolev_lp_norm(u, config.t, config.q, mask.probe);
    const double h_s_norm = std::sqrt(
        grid_norm_l2(u) * grid_norm_l2(u) +
        grid_norm_l2(frac_laplacian(u, config.s)) *
            grid_norm_l2(frac_laplacian(u, config.s)));
    double rhs = h_s_norm;
    for (const VectorField* f : {&f1, &f2}) {
      rhs += grid_norm_lp(*f, config.q, &mask.interior);
      rhs += grid_norm_l2(*f);
    }

    report.grid_sizes.push_back(N);
    report.lhs.push_back(lhs);
    report.rhs_bundle.push_back(rhs);
    report.ratios.push_back(rhs > 0.0 ? lhs / rhs : 0.0);
  }

  for (double r : report.ratios)
    report.max_ratio = std::max(report.max_ratio, r);
  const std::size_t n = report.ratios.size();
  if (n >= 2 && report.ratios[n - 2] > 0.0)
    report.variation_two_finest =
        std::abs(report.ratios[n - 1] - report.ratios[n - 2]) /
        report.ratios[n - 2];
  return report;
}

double korn_ratio(const VectorField& u, double s, const QuadratureSpec& quad) {
  const double denom = gagliardo_seminorm(u, s, quad);
  if (denom == 0.0)
    throw std::invalid_argument("korn_ratio: field must be nonzero");
  return projected_seminorm(u, s, quad) / denom;
}

double hessian_identity_residual(int dim, double s,
                                 std::span<const std::array<double, 2>> samples,
                                 double step) {
  if (dim != 1 && dim != 2)
    throw std::invalid_argument("hessian_identity_residual: dim in {1,2}");
  if (!(s > 0.0) || !(s < 1.0))
    throw std::invalid_argument("hessian_identity_residual: s in (0,1)");
  if (samples.empty())
    throw std::invalid_argument("hessian_identity_residual: no samples");

  const double beta = dim + 2.0 * s - 2.0;
  const double gamma1 = beta * (dim + 2.0 * s);
  const double gamma2 = beta;
  const auto f = [beta](double wx, double wy) {
    return std::pow(wx * wx + wy * wy, -0.5 * beta);
  };

  double worst = 0.0;
  for (const auto& w : samples) {
    const double wx = w[0];
    const double wy = dim == 2 ? w[1] : 0.0;
    const double r2 = wx * wx + wy * wy;
    const double r = std::sqrt(r2);
    if (r < 0.1)
      throw std::invalid_argument(
          "hessian_identity_residual: sample too close to the singularity");

    const double pref = std::pow(r2, -0.5 * (dim + 2.0 * s));
    for (int i = 0; i < dim; ++i) {
      for (int j = i; j < dim; ++j) {
        double fd;
        if (i == j) {
          const double xp = i == 0 ? wx + step : wx;
          const double xm = i == 0 ? wx - step : wx;
          const double yp = i == 1 ? wy + step : wy;
          const double ym = i == 1 ? wy - step : wy;
          fd = (f(xp, yp) - 2.0 * f(wx, wy) + f(xm, ym)) / (step * step);
        } else {
          fd = (f(wx + step, wy + step) - f(wx + step, wy - step) -
                f(wx - step, wy + step) + f(wx - step, wy - step)) /
               (4.0 * step * step);
        }
        const double wi = i == 0 ? wx : wy;
        const double wj = j == 0 ? wx : wy;
        const double closed =
            pref * (gamma1 * wi * wj / r2 - (i == j ? gamma2 : 0.0));
        worst = std::max(worst, std::abs(fd - closed));
      }
    }
  }
  return worst;
}

std::vector<LocalLimitRow> local_limit_experiment(
    const std::vector<double>& a, std::span<const double> s_list,
    const VectorField& u, const QuadratureSpec& quad) {
  const GridSpec& grid = u.grid();
  if (static_cast<int>(a.size()) != grid.nodes())
    throw std::invalid_argument("local_limit_experiment: profile size");

  // L0 u = div(a grad u) + 2 grad(a div u), assembled spectrally with
  // pointwise products in physical space
  VectorField local(grid);
  {
    for (int c = 0; c < grid.dim; ++c) {
      for (int d = 0; d < grid.dim; ++d) {
        // d_d ( a d_d u_c )
        VectorField du = derivative(u, d);
        VectorField term(grid);
        for (int i = 0; i < grid.nodes(); ++i)
          term.value(i, 0) = a[i] * du.value(i, c);
        // reuse component 0 as scalar carrier
        VectorField dterm = derivative(term, d);
        for (int i = 0; i < grid.nodes(); ++i)
          local.value(i, c) += dterm.value(i, 0);
      }
    }
    // divergence
    VectorField divu(grid);
    for (int d = 0; d < grid.dim; ++d) {
      VectorField du = derivative(u, d);
      for (int i = 0; i < grid.nodes(); ++i)
        divu.value(i, 0) += du.value(i, d);
    }
    for (int i = 0; i < grid.nodes(); ++i) divu.value(i, 0) *= a[i];
    for (int d = 0; d < grid.dim; ++d) {
      VectorField grad = derivative(divu, d);
      for (int i = 0; i < grid.nodes(); ++i)
        local.value(i, d) += 2.0 * grad.value(i, 0);
    }
  }
  const double local_norm = grid_norm_l2(local);

  std::vector<LocalLimitRow> rows;
  for (double s : s_list) {
    if (!(s > 0.5) || !(s < 1.0))
      throw std::invalid_argument("local_limit_experiment: s must be in (0.5,1)");
    const VectorField nonlocal = separable_fast_apply(a, s, u, quad);
    // least-squares kappa: minimizes ||kappa . X - Y||
    const double xx = grid_inner(nonlocal, nonlocal);
    const double xy = grid_inner(nonlocal, local);
    LocalLimitRow row;
    row.s = s;
    row.kappa = xx > 0.0 ? xy / xx : 0.0;
    if (local_norm == 0.0) {
      row.residual = 0.0;
    } else {
      VectorField miss = local;
      axpy(-row.kappa, nonlocal, miss);
      row.residual = grid_norm_l2(miss) / local_norm;
    }
    rows.push_back(row);
  }
  return rows;
}

MultiplierBoundStats multiplier_bound_check(double c, double p, int trials,
                                            const GridSpec& grid,
                                            std::uint64_t seed) {
  if (c == 1.0) throw std::invalid_argument("multiplier_bound_check: c = 1");
  if (p != 2.0 && p != 4.0)
    throw std::invalid_argument("multiplier_bound_check: p must be 2 or 4");
  if (trials < 1)
    throw std::invalid_argument("multiplier_bound_check: trials >= 1");

  MultiplierBoundStats stats;
  stats.trials = trials;
  const int kmax = std::max(1, grid.points_per_dim / 8);
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    const VectorField U = random_band_limited(grid, kmax, seed + t);
    const VectorField DU = lame_multiplier_apply(U, c);
    const double ratio = grid_norm_lp(U, p) / grid_norm_lp(DU, p);
    stats.max_ratio = std::max(stats.max_ratio, ratio);
    sum += ratio;
  }
  stats.mean_ratio = sum / trials;
  return stats;
}

}  // namespace fraclame
