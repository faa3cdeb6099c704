#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "fraclame/nonlocal.hpp"
#include "fraclame/random_fields.hpp"
#include "fraclame/solver.hpp"
#include "fraclame/spectral.hpp"
#include "test_support.hpp"

using namespace fraclame;
using testsupport::make_grid;

namespace {
const CoefficientClass kCls{0.5, 0.25, 1.0};

VectorField scaled_by(const std::vector<double>& w, const VectorField& u) {
  VectorField out = u;
  for (int i = 0; i < u.nodes(); ++i)
    for (int c = 0; c < u.components(); ++c) out.value(i, c) *= w[i];
  return out;
}
}  // namespace

TEST_CASE("domain masks validate their geometry") {
  const GridSpec g = make_grid(1, 64);
  const DomainMask mask = DomainMask::centered_box(g, 0.4, 0.25);
  CHECK(mask.interior_count() > 0);
  CHECK_NOTHROW(mask.validate());

  DomainMask bad = mask;
  bad.interior.assign(g.nodes(), 1);  // fills the padding region too
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  // probe touching the Omega boundary violates the 2-cell margin
  DomainMask touching = mask;
  touching.probe = touching.interior;
  CHECK_THROWS_AS(touching.validate(), std::invalid_argument);
}

TEST_CASE("Dirichlet solve: zero data, constraint, weak equation") {
  const GridSpec g = make_grid(1, 64);
  const DomainMask mask = DomainMask::centered_box(g, 0.4);
  const Coefficient one = Coefficient::constant(1.0, kCls);

  const SolveReport zero =
      solve_dirichlet(one, 0.5, VectorField(g), mask, 1e-10, 100);
  CHECK(zero.status == SolveStatus::kConverged);
  CHECK(zero.iterations == 0);
  CHECK(max_abs(zero.solution) == 0.0);

  const VectorField f = windowed(random_band_limited(g, 5, 3), 0.4);
  const SolveReport run = solve_dirichlet(one, 0.5, f, mask, 1e-10, 2000);
  REQUIRE(run.status == SolveStatus::kConverged);
  CHECK(run.residual_history.back() <= 1e-10);

  // exterior values stay exactly zero
  for (int i = 0; i < g.nodes(); ++i)
    if (!mask.interior[i]) CHECK(run.solution.value(i, 0) == 0.0);

  // interior rows satisfy the equation pointwise
  const VectorField lu = apply_operator(one, 0.5, run.solution);
  double worst = 0.0;
  for (int i = 0; i < g.nodes(); ++i)
    if (mask.interior[i])
      worst = std::max(worst, std::abs(lu.value(i, 0) - f.value(i, 0)));
  CHECK(worst < 1e-8 * max_abs(f));

  // energy decreases monotonically along the iterates, and the recorded
  // values are the actual quadratic energy of the solution
  for (std::size_t i = 1; i < run.energy_history.size(); ++i)
    CHECK(run.energy_history[i] <= run.energy_history[i - 1] + 1e-13);
  const double e_final = energy(one, 0.5, run.solution, f);
  CHECK(std::abs(run.energy_history.back() - e_final) <=
        1e-10 * std::abs(e_final));
}

TEST_CASE("Dirichlet solve in two dimensions") {
  const GridSpec g = testsupport::make_grid(2, 16);
  const DomainMask mask = DomainMask::centered_box(g, 0.4);
  const Coefficient a = Coefficient::sampled(
      g,
      [](const double* x, const double* y) {
        return 1.0 + 0.2 * std::cos(2.0 * kPi * (x[0] + y[0])) *
                         std::cos(2.0 * kPi * (x[1] + y[1]));
      },
      kCls);
  const VectorField f = windowed(random_band_limited(g, 3, 41), 0.4);
  const SolveReport run = solve_dirichlet(a, 0.5, f, mask, 1e-10, 2000);
  REQUIRE(run.status == SolveStatus::kConverged);

  const VectorField lu = apply_operator(a, 0.5, run.solution);
  double worst = 0.0;
  for (int i = 0; i < g.nodes(); ++i) {
    for (int c = 0; c < 2; ++c) {
      if (mask.interior[i])
        worst = std::max(worst, std::abs(lu.value(i, c) - f.value(i, c)));
      else
        CHECK(run.solution.value(i, c) == 0.0);
    }
  }
  CHECK(worst < 1e-8 * max_abs(f));
}

TEST_CASE("Dirichlet solve agrees with a dense direct solve") {
  const GridSpec g = make_grid(1, 64);
  const DomainMask mask = DomainMask::centered_box(g, 0.4);
  const Coefficient a = Coefficient::sampled(
      g,
      [](const double* x, const double* y) {
        return 1.0 + 0.3 * std::sin(2.0 * kPi * x[0]) * std::sin(2.0 * kPi * y[0]);
      },
      kCls);
  const double s = 0.6;
  const VectorField f = windowed(random_band_limited(g, 5, 7), 0.4);
  const SolveReport run = solve_dirichlet(a, s, f, mask, 1e-12, 4000);
  REQUIRE(run.status == SolveStatus::kConverged);

  const std::vector<double> S = assemble_dense_stiffness(a, s, mask);
  std::vector<int> dofs;
  for (int i = 0; i < g.nodes(); ++i)
    if (mask.interior[i]) dofs.push_back(i);
  const int m = static_cast<int>(dofs.size());
  Eigen::MatrixXd mat(m, m);
  Eigen::VectorXd rhs(m);
  for (int r = 0; r < m; ++r) {
    rhs(r) = f.value(dofs[r], 0);
    for (int c = 0; c < m; ++c) mat(r, c) = S[static_cast<std::size_t>(r) * m + c];
  }
  const Eigen::VectorXd dense = mat.partialPivLu().solve(rhs);
  double worst = 0.0;
  for (int r = 0; r < m; ++r)
    worst = std::max(worst, std::abs(dense(r) - run.solution.value(dofs[r], 0)));
  CHECK(worst < 1e-8);
}

TEST_CASE("coercivity failure is detected and certified by the eigenvalue") {
  const GridSpec g = make_grid(1, 32);
  const DomainMask mask = DomainMask::centered_box(g, 0.4);
  CoefficientClass loose{0.5, 1e-9, 1.0};
  const double L = g.box_length, h = g.spacing();
  const Coefficient bad = Coefficient::sampled(
      g,
      [&](const double* x, const double* y) {
        double d = std::abs(x[0] - y[0]);
        d = std::min(d, L - d);
        if (d == 0.0) return 1.0;
        return d <= 1.5 * h ? -40.0 : 1.0;
      },
      loose);

  // dense oracle: the interior stiffness has a negative eigenvalue
  const double lambda_min = smallest_stiffness_eigenvalue(bad, 0.5, mask);
  CHECK(lambda_min < 0.0);

  std::mt19937_64 seeds(11);
  bool detected = false;
  for (int trial = 0; trial < 3 && !detected; ++trial) {
    const VectorField f = windowed(random_band_limited(g, 5, seeds()), 0.4);
    const SolveReport run = solve_dirichlet(bad, 0.5, f, mask, 1e-10, 2000);
    detected = run.status == SolveStatus::kIndefiniteDetected;
  }
  CHECK(detected);
}

TEST_CASE("constant-weight solve: manufactured solution and zero data") {
  const GridSpec g = make_grid(1, 128);
  const double t = 0.6, ts2 = 0.4, c = -0.5, abar = 1.7;

  VectorField ustar = random_band_limited(g, 6, 13);
  ustar.project_mean_zero();
  VectorField f1 = lame_multiplier_apply(frac_laplacian(ustar, t), c);
  for (double& v : f1.values()) v *= abar;
  const VectorField u = solve_constant_lame(abar, t, ts2, c, f1, VectorField(g));
  CHECK(max_abs_diff(u, ustar) < 1e-10 * max_abs(ustar));

  CHECK(max_abs(solve_constant_lame(1.0, t, ts2, c, VectorField(g),
                                    VectorField(g))) == 0.0);
  CHECK_THROWS_AS((void)solve_constant_lame(0.0, t, ts2, c, f1, VectorField(g)),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)solve_constant_lame(1.0, t, ts2, 1.0, f1, VectorField(g)),
                  std::invalid_argument);
}

TEST_CASE("transverse data make the constant-weight solution c-independent") {
  const GridSpec g = make_grid(2, 32);
  const VectorField f1 = transverse_wave(g, 2, 1);
  const VectorField a = solve_constant_lame(1.0, 0.6, 0.4, 0.5, f1, VectorField(g));
  const VectorField b = solve_constant_lame(1.0, 0.6, 0.4, -3.0, f1, VectorField(g));
  CHECK(max_abs_diff(a, b) < 1e-12 * max_abs(a));
}

TEST_CASE("weighted Richardson: constant weight converges in one step") {
  const GridSpec g = make_grid(1, 128);
  const std::vector<double> abar(g.nodes(), 2.0);
  const VectorField f1 = random_band_limited(g, 6, 17);
  const SolveReport rep =
      solve_weighted_lame(abar, 0.6, 0.4, -0.5, f1, VectorField(g), 1e-10, 50);
  CHECK(rep.status == SolveStatus::kConverged);
  CHECK(rep.iterations <= 1);
}

TEST_CASE("weighted Richardson: oscillation 1.5 converges, 10 may not") {
  const GridSpec g = make_grid(1, 128);
  const double t = 0.6, ts2 = 0.4, c = -0.5;
  double x[1];

  std::vector<double> mild(g.nodes());
  for (int i = 0; i < g.nodes(); ++i) {
    g.node_coords(i, x);
    mild[i] = 1.0 + 0.2 * std::sin(2.0 * kPi * x[0]);
  }
  VectorField ustar = random_band_limited(g, 6, 19);
  ustar.project_mean_zero();
  const VectorField f1 =
      scaled_by(mild, lame_multiplier_apply(frac_laplacian(ustar, t), c));
  const SolveReport rep =
      solve_weighted_lame(mild, t, ts2, c, f1, VectorField(g), 1e-8, 200);
  REQUIRE(rep.status == SolveStatus::kConverged);
  CHECK(rep.iterations <= 200);
  CHECK(rep.residual_history.back() <= 1e-8);
  CHECK(max_abs_diff(rep.solution, ustar) < 1e-6 * max_abs(ustar));

  std::vector<double> wild(g.nodes());
  for (int i = 0; i < g.nodes(); ++i) {
    g.node_coords(i, x);
    wild[i] = (11.0 + 9.0 * std::sin(2.0 * kPi * x[0])) / 2.0;
  }
  const SolveReport hard =
      solve_weighted_lame(wild, t, ts2, c, f1, VectorField(g), 1e-8, 40);
  CHECK(hard.status == SolveStatus::kMaxIter);
  CHECK(hard.residual_history.size() == 41);

  std::vector<double> negative(g.nodes(), -1.0);
  CHECK_THROWS_AS((void)solve_weighted_lame(negative, t, ts2, c, f1,
                                            VectorField(g), 1e-8, 10),
                  std::invalid_argument);
}

TEST_CASE("perturbative outer iteration") {
  const GridSpec g = make_grid(1, 256);
  const DomainMask mask = DomainMask::centered_box(g, 0.4, 0.25);
  const double s = 0.25, t = 0.3;
  const LameSymbolConstants consts = derive_ell_constants(1, s);
  const VectorField f2 = windowed(random_band_limited(g, 9, 23, 5), 0.4);

  SUBCASE("zero data gives the zero fixed point") {
    const Coefficient one = Coefficient::constant(1.0, kCls);
    const SolveReport rep = solve_full_perturbative(
        one, s, t, VectorField(g), VectorField(g), mask, 1e-8, 10, {}, &consts);
    CHECK(rep.status == SolveStatus::kConverged);
    CHECK(max_abs(rep.solution) == 0.0);
  }

  SUBCASE("constant coefficients converge in one outer step") {
    const Coefficient one = Coefficient::constant(1.0, kCls);
    const SolveReport rep = solve_full_perturbative(
        one, s, t, VectorField(g), f2, mask, 2e-2, 10, {}, &consts);
    CHECK(rep.status == SolveStatus::kConverged);
    CHECK(rep.iterations <= 1);
  }

  SUBCASE("small Hoelder perturbation contracts geometrically") {
    const Coefficient a = Coefficient::sampled(
        g,
        [](const double* x, const double* y) {
          return 1.0 +
                 0.05 * std::sin(2.0 * kPi * x[0]) * std::sin(2.0 * kPi * y[0]);
        },
        kCls);
    const SolveReport rep = solve_full_perturbative(a, s, t, VectorField(g),
                                                    f2, mask, 1e-7, 20, {},
                                                    &consts);
    REQUIRE(rep.status == SolveStatus::kConverged);
    for (std::size_t i = 1; i + 1 < rep.residual_history.size(); ++i)
      CHECK(rep.residual_history[i + 1] < rep.residual_history[i]);

    // the fixed point satisfies the same weak equations as the Dirichlet
    // solution on interior probes
    const VectorField data = frac_laplacian(VectorField(g), 2.0 * s - t) + f2;
    const SolveReport dir = solve_dirichlet(a, s, data, mask, 1e-7, 4000);
    REQUIRE(dir.status == SolveStatus::kConverged);
    const double fnorm = grid_norm_l2(data);
    std::mt19937_64 seeds(31);
    double worst_p = 0.0, worst_d = 0.0;
    for (int probe = 0; probe < 20; ++probe) {
      const VectorField phi =
          windowed(random_band_limited(g, 6, seeds()), 0.4);
      const double target = grid_inner(data, phi);
      const double denom = fnorm * grid_norm_l2(phi);
      worst_p = std::max(
          worst_p, std::abs(bilinear_form(a, s, rep.solution, phi) - target) /
                       denom);
      worst_d = std::max(
          worst_d, std::abs(bilinear_form(a, s, dir.solution, phi) - target) /
                       denom);
    }
    CHECK(worst_p <= 1e-6);
    CHECK(worst_d <= 1e-6);
  }
}
