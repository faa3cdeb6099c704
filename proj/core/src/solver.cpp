#include "fraclame/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fraclame/spectral.hpp"

namespace fraclame {

namespace {

void mask_project(VectorField& u, const std::vector<std::uint8_t>& keep) {
  for (int i = 0; i < u.nodes(); ++i) {
    if (keep[i]) continue;
    for (int c = 0; c < u.components(); ++c) u.value(i, c) = 0.0;
  }
}

}  // namespace

DomainMask DomainMask::centered_box(const GridSpec& grid,
                                    double omega_fraction,
                                    double probe_fraction) {
  grid.validate();
  DomainMask mask;
  mask.grid = grid;
  mask.interior.assign(grid.nodes(), 0);
  mask.probe.assign(grid.nodes(), 0);
  const double half = 0.5 * grid.box_length;
  double x[2];
  for (int i = 0; i < grid.nodes(); ++i) {
    grid.node_coords(i, x);
    bool in_omega = true, in_probe = probe_fraction > 0.0;
    for (int d = 0; d < grid.dim; ++d) {
      const double r = std::abs(x[d] - half);
      if (r >= 0.5 * omega_fraction * grid.box_length) in_omega = false;
      if (r >= 0.5 * probe_fraction * grid.box_length) in_probe = false;
    }
    mask.interior[i] = in_omega;
    mask.probe[i] = in_probe;
  }
  mask.validate();
  return mask;
}

int DomainMask::interior_count() const {
  int count = 0;
  for (auto b : interior) count += b != 0;
  return count;
}

void DomainMask::validate() const {
  grid.validate();
  if (static_cast<int>(interior.size()) != grid.nodes())
    throw std::invalid_argument("DomainMask: interior size mismatch");
  if (!probe.empty() && static_cast<int>(probe.size()) != grid.nodes())
    throw std::invalid_argument("DomainMask: probe size mismatch");

  const int n = grid.points_per_dim;
  auto neighbors_interior = [&](int node, int radius) {
    int ix, iy;
    grid.node_index(node, &ix, &iy);
    for (int dx = -radius; dx <= radius; ++dx) {
      for (int dy = (grid.dim == 2 ? -radius : 0);
           dy <= (grid.dim == 2 ? radius : 0); ++dy) {
        const int jx = ((ix + dx) % n + n) % n;
        const int jy = ((iy + dy) % n + n) % n;
        if (!interior[grid.linear_index(jx, jy)]) return false;
      }
    }
    return true;
  };

  for (int i = 0; i < grid.nodes(); ++i) {
    if (interior[i] && !grid.in_support(i))
      throw std::invalid_argument(
          "DomainMask: interior node outside the support sub-box");
    if (!probe.empty() && probe[i]) {
      if (!interior[i])
        throw std::invalid_argument("DomainMask: probe node outside Omega");
      if (!neighbors_interior(i, 2))
        throw std::invalid_argument(
            "DomainMask: probe node within 2 cells of the Omega boundary");
    }
  }
}

SolveReport solve_dirichlet(const Coefficient& A, double s,
                            const VectorField& f, const DomainMask& mask,
                            double tol, int max_iter,
                            const QuadratureSpec& quad) {
  const GridSpec& grid = f.grid();
  if (!(mask.grid == grid))
    throw std::invalid_argument("solve_dirichlet: mask grid mismatch");
  mask.validate();
  for (double v : f.values())
    if (!std::isfinite(v))
      throw std::invalid_argument("solve_dirichlet: data not finite");

  SolveReport report;
  report.solution = VectorField(grid);

  VectorField rhs = f;
  mask_project(rhs, mask.interior);
  const double rhs_norm = grid_norm_l2(rhs);
  if (rhs_norm == 0.0) {
    report.status = SolveStatus::kConverged;
    report.iterations = 0;
    return report;
  }

  auto apply_masked = [&](const VectorField& v) {
    VectorField out = apply_operator(A, s, v, quad);
    mask_project(out, mask.interior);
    return out;
  };

  VectorField& u = report.solution;
  VectorField lu(grid);  // running L u
  VectorField r = rhs;   // residual rhs - L u (u = 0 initially)
  VectorField p = r;
  double rr = grid_inner(r, r);
  report.residual_history.push_back(std::sqrt(rr) / rhs_norm);
  report.energy_history.push_back(0.0);

  for (int it = 1; it <= max_iter; ++it) {
    VectorField q = apply_masked(p);
    const double curvature = grid_inner(p, q);
    if (curvature <= 0.0) {
      report.status = SolveStatus::kIndefiniteDetected;
      report.iterations = it - 1;
      return report;
    }
    const double alpha = rr / curvature;
    axpy(alpha, p, u);
    axpy(alpha, q, lu);
    axpy(-alpha, q, r);
    const double rr_next = grid_inner(r, r);

    report.residual_history.push_back(std::sqrt(rr_next) / rhs_norm);
    report.energy_history.push_back(0.5 * grid_inner(u, lu) -
                                    grid_inner(rhs, u));
    report.iterations = it;
    if (std::sqrt(rr_next) <= tol * rhs_norm) {
      report.status = SolveStatus::kConverged;
      return report;
    }
    const double beta = rr_next / rr;
    rr = rr_next;
    VectorField p_next = r;
    axpy(beta, p, p_next);
    p = std::move(p_next);
  }
  report.status = SolveStatus::kMaxIter;
  return report;
}

VectorField solve_constant_lame(double abar, double t, double two_s_minus_t,
                                double c, const VectorField& f1,
                                const VectorField& f2) {
  if (!(abar > 0.0))
    throw std::invalid_argument("solve_constant_lame: abar must be positive");
  if (c == 1.0) throw std::invalid_argument("solve_constant_lame: c = 1");
  if (!(t > 0.0) || !(t < 1.0) || !(two_s_minus_t > 0.0) ||
      !(two_s_minus_t < 1.0))
    throw std::invalid_argument(
        "solve_constant_lame: t and 2s-t must lie in (0,1)");
  f1.require_same_grid(f2);

  SpectralField g = forward_transform(f2);
  bool dropped = false;
  g = riesz_potential(std::move(g), two_s_minus_t);
  dropped |= g.dropped_zero_mode();

  SpectralField f1_hat = forward_transform(f1);
  // drop the f1 zero mode as well: the outer (-Delta)^{(2s-t)/2} kills it
  {
    double scale = 0.0;
    for (const auto& z : f1_hat.coeffs())
      scale = std::max(scale, std::abs(z));
    for (int comp = 0; comp < f1_hat.components(); ++comp) {
      if (std::abs(f1_hat.coeff(0, comp)) > 1e-12 * std::max(scale, 1e-300))
        dropped = true;
      f1_hat.coeff(0, comp) = 0.0;
    }
  }
  auto combined = std::move(f1_hat);
  for (std::size_t i = 0; i < combined.coeffs().size(); ++i)
    combined.coeffs()[i] += g.coeffs()[i];

  SpectralField u_hat =
      riesz_potential(lame_multiplier_solve(std::move(combined), c), t);
  for (auto& z : u_hat.coeffs()) z /= abar;
  VectorField u = inverse_transform(u_hat);
  u.set_dropped_zero_mode(dropped);
  return u;
}

SolveReport solve_weighted_lame(const std::vector<double>& abar, double t,
                                double two_s_minus_t, double c,
                                const VectorField& f1, const VectorField& f2,
                                double tol, int max_iter) {
  const GridSpec& grid = f1.grid();
  f1.require_same_grid(f2);
  if (static_cast<int>(abar.size()) != grid.nodes())
    throw std::invalid_argument("solve_weighted_lame: weight size mismatch");
  for (double w : abar)
    if (!(w > 0.0))
      throw std::invalid_argument(
          "solve_weighted_lame: weight must be positive");
  if (c == 1.0) throw std::invalid_argument("solve_weighted_lame: c = 1");

  SolveReport report;
  report.solution = VectorField(grid);

  // smoothed right-hand side f1 + I^{2s-t} f2, projected to mean zero
  VectorField rhs = f1;
  {
    SpectralField g = forward_transform(f2);
    g = riesz_potential(std::move(g), two_s_minus_t);
    report.dropped_zero_mode |= g.dropped_zero_mode();
    rhs = rhs + inverse_transform(g);
    const double dropped = rhs.project_mean_zero();
    if (dropped > 1e-12 * std::max(1.0, max_abs(rhs)))
      report.dropped_zero_mode = true;
  }
  const double rhs_norm = grid_norm_l2(rhs);
  if (rhs_norm == 0.0) {
    report.status = SolveStatus::kConverged;
    return report;
  }

  double log_mean = 0.0;
  for (double w : abar) log_mean += std::log(w);
  const double abar0 = std::exp(log_mean / abar.size());

  VectorField& u = report.solution;
  const int n = grid.nodes();
  for (int it = 0; it <= max_iter; ++it) {
    // residual of abar . G u = rhs, G = (I + c R x R)(-Delta)^{t/2}
    VectorField gu = inverse_transform(
        lame_multiplier_apply(frac_laplacian(forward_transform(u), t), c));
    VectorField resid = rhs;
    for (int i = 0; i < n; ++i)
      for (int comp = 0; comp < grid.dim; ++comp)
        resid.value(i, comp) -= abar[i] * gu.value(i, comp);
    resid.project_mean_zero();

    const double rho = rhs_norm > 0.0 ? grid_norm_l2(resid) / rhs_norm : 0.0;
    report.residual_history.push_back(rho);
    report.iterations = it;
    if (rho <= tol) {
      report.status = SolveStatus::kConverged;
      return report;
    }
    if (it == max_iter) break;

    // constant-coefficient correction at the geometric mean weight
    SpectralField step = forward_transform(resid);
    step = riesz_potential(lame_multiplier_solve(std::move(step), c), t);
    VectorField du = inverse_transform(step);
    axpy(1.0 / abar0, du, u);
  }
  report.status = SolveStatus::kMaxIter;
  return report;
}

SolveReport solve_full_perturbative(const Coefficient& A, double s, double t,
                                    const VectorField& f1,
                                    const VectorField& f2,
                                    const DomainMask& mask, double tol,
                                    int outer_max, const QuadratureSpec& quad,
                                    const LameSymbolConstants* consts_in) {
  const GridSpec& grid = f1.grid();
  f1.require_same_grid(f2);
  if (!(mask.grid == grid))
    throw std::invalid_argument("solve_full_perturbative: mask grid mismatch");
  if (!(s > 0.0) || !(s < 1.0) || !(t >= s) || !(t < std::min(2.0 * s, 1.0)))
    throw std::invalid_argument(
        "solve_full_perturbative: require s in (0,1), s <= t < min{2s,1}");
  const double ts2 = 2.0 * s - t;

  LameSymbolConstants consts =
      consts_in ? *consts_in : derive_ell_constants(grid.dim, s);
  consts.validate();
  const double c = consts.c();

  // assembled data F = (-Delta)^{(2s-t)/2} f1 + f2
  VectorField data = frac_laplacian(f1, ts2) + f2;
  const double data_norm = grid_norm_l2(data);

  SolveReport report;
  report.solution = VectorField(grid);
  if (data_norm == 0.0) {
    report.status = SolveStatus::kConverged;
    return report;
  }

  const std::vector<double> a_diag = A.diagonal_field(grid);
  std::vector<double> weight(a_diag.size());
  for (std::size_t i = 0; i < weight.size(); ++i) {
    if (!(a_diag[i] > 0.0))
      throw std::invalid_argument(
          "solve_full_perturbative: diagonal coefficient must be positive");
    weight[i] = consts.ell1 * a_diag[i];
  }

  // tail mass of the constant mode: L (1 e_d) = tail_coeff * A_D e_d
  const double tail_coeff = quad.tail_coefficient(grid, s);
  double mean_adiag = 0.0;
  for (double v : a_diag) mean_adiag += v;
  mean_adiag /= a_diag.size();

  VectorField& u = report.solution;
  int increases = 0;
  for (int outer = 0; outer <= outer_max; ++outer) {
    VectorField resid = data - apply_operator(A, s, u, quad);
    const double rho = grid_norm_l2(resid) / data_norm;
    report.residual_history.push_back(rho);
    report.iterations = outer;

    if (rho <= tol) {
      report.status = SolveStatus::kConverged;
      return report;
    }
    const std::size_t hist = report.residual_history.size();
    if (hist >= 2 &&
        report.residual_history[hist - 1] > report.residual_history[hist - 2]) {
      if (++increases >= 3) {
        report.status = SolveStatus::kMaxIter;
        return report;
      }
    } else {
      increases = 0;
    }
    if (outer == outer_max) break;

    // constant-mode part of the correction, solved through the tail mass
    double mean_step[2] = {0.0, 0.0};
    for (int comp = 0; comp < grid.dim; ++comp) {
      double m = 0.0;
      for (int i = 0; i < grid.nodes(); ++i) m += resid.value(i, comp);
      m /= grid.nodes();
      mean_step[comp] = tail_coeff > 0.0 ? m / (tail_coeff * mean_adiag) : 0.0;
    }

    // mean-zero part through the weighted spectral solve of
    //   M du = resid  <=>  weight . G du = I^{2s-t} resid
    VectorField g1 = riesz_potential(resid, ts2);
    SolveReport inner = solve_weighted_lame(weight, t, ts2, c, g1,
                                            VectorField(grid), 1e-3, 200);
    axpy(1.0, inner.solution, u);
    for (int comp = 0; comp < grid.dim; ++comp)
      for (int i = 0; i < grid.nodes(); ++i)
        u.value(i, comp) += mean_step[comp];
  }
  report.status = SolveStatus::kMaxIter;
  return report;
}

std::vector<double> assemble_dense_stiffness(const Coefficient& A, double s,
                                             const DomainMask& mask,
                                             const QuadratureSpec& quad) {
  const GridSpec& grid = mask.grid;
  mask.validate();
  A.require_grid(grid);

  std::vector<int> dofs;
  for (int i = 0; i < grid.nodes(); ++i)
    if (mask.interior[i]) dofs.push_back(i);
  const int m = static_cast<int>(dofs.size()) * grid.dim;
  std::vector<double> S(static_cast<std::size_t>(m) * m, 0.0);

  // columns are operator rows applied to nodal basis fields
  VectorField basis(grid);
  for (std::size_t jd = 0; jd < dofs.size(); ++jd) {
    for (int jb = 0; jb < grid.dim; ++jb) {
      basis.value(dofs[jd], jb) = 1.0;
      VectorField col = apply_operator(A, s, basis, quad);
      basis.value(dofs[jd], jb) = 0.0;
      const int jcol = static_cast<int>(jd) * grid.dim + jb;
      for (std::size_t id = 0; id < dofs.size(); ++id)
        for (int ia = 0; ia < grid.dim; ++ia)
          S[static_cast<std::size_t>(static_cast<int>(id) * grid.dim + ia) *
                m +
            jcol] = col.value(dofs[id], ia);
    }
  }
  return S;
}

double smallest_stiffness_eigenvalue(const Coefficient& A, double s,
                                     const DomainMask& mask,
                                     const QuadratureSpec& quad) {
  const std::vector<double> S = assemble_dense_stiffness(A, s, mask, quad);
  const int m = static_cast<int>(std::lround(std::sqrt(double(S.size()))));
  Eigen::MatrixXd mat(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) mat(i, j) = S[static_cast<std::size_t>(i) * m + j];
  // symmetrize away rounding before the eigensolve
  Eigen::MatrixXd sym = 0.5 * (mat + mat.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym,
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace fraclame
