#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "fraclame/coefficient.hpp"
#include "fraclame/nonlocal.hpp"
#include "fraclame/random_fields.hpp"
#include "fraclame/spectral.hpp"
#include "fraclame/symbols.hpp"
#include "test_support.hpp"

using namespace fraclame;
using testsupport::make_grid;

namespace {
const CoefficientClass kCls{0.5, 0.25, 1.0};
}

TEST_CASE("validate_coefficient: class checks and sign flags") {
  const GridSpec g = make_grid(1, 32);

  // constant kappa = 1, lambda = 0.5: passes with zero Hoelder quotient
  {
    CoefficientClass cls{0.5, 0.5, 1.0};
    const Coefficient a = Coefficient::sampled(
        g, [](const double*, const double*) { return 1.0; }, cls);
    const CoefficientReport rep = validate_coefficient(a, 200);
    CHECK(rep.passed);
    CHECK(rep.holder_quotient == 0.0);
    CHECK(rep.negative_offdiagonal_count == 0);
  }

  // the sign-changing class member: passes the bounds while being negative
  // away from the diagonal (the box must be long enough for sin to change
  // sign)
  {
    const double alpha = 0.5, lambda = 1e-7;
    CoefficientClass cls{alpha, lambda, 1.0};
    const GridSpec wide = make_grid(1, 32, 12.0);
    const Coefficient a = Coefficient::sampled(
        wide,
        [&](const double* x, const double* y) {
          const double ax = std::pow(std::abs(x[0]), alpha);
          const double ay = std::pow(std::abs(y[0]), alpha);
          const double da = std::pow(std::abs(x[0] - y[0]), alpha);
          return (2.0 * lambda + ax + ay) / (lambda + ax + ay) +
                 1e6 * (std::sin(x[0]) + std::sin(y[0])) * da / (1.0 + da);
        },
        cls);
    const CoefficientReport rep = validate_coefficient(a, 500);
    CHECK(rep.passed);
    CHECK(rep.negative_offdiagonal_count > 0);
    REQUIRE(!rep.negative_offdiagonal_samples.empty());
    const auto& witness = rep.negative_offdiagonal_samples.front();
    CHECK(a.eval(witness.i, witness.j) < 0.0);
  }

  // diagonal below the claimed lambda fails with a witness
  {
    CoefficientClass cls{0.5, 0.5, 1.0};
    const Coefficient a = Coefficient::sampled(
        g, [](const double*, const double*) { return 0.1; }, cls);
    const CoefficientReport rep = validate_coefficient(a, 200);
    CHECK_FALSE(rep.passed);
    REQUIRE(!rep.violations.empty());
    CHECK(rep.violations.front().find("diagonal") != std::string::npos);
  }
}

TEST_CASE("bilinear form: zero, symmetry, spectral oracle") {
  const GridSpec g = make_grid(1, 512);
  const Coefficient one = Coefficient::constant(1.0, kCls);
  const double s = 0.25;

  CHECK(bilinear_form(one, s, VectorField(g), VectorField(g)) == 0.0);

  const VectorField u = windowed(random_band_limited(g, 9, 1, 5));
  const VectorField v = windowed(random_band_limited(g, 9, 2, 5));
  const double buv = bilinear_form(one, s, u, v);
  const double bvu = bilinear_form(one, s, v, u);
  CHECK(std::abs(buv - bvu) < 1e-13 * std::abs(buv));

  // spectral evaluation with derived constants as the oracle
  const LameSymbolConstants consts = derive_ell_constants(1, s);
  const double spectral =
      grid_inner(vector_frac_laplacian(u, s, consts), v);
  CHECK(std::abs(buv - spectral) < 1e-2 * std::abs(spectral));
}

TEST_CASE("apply_operator is the Galerkin row of the pair form") {
  const GridSpec g = make_grid(1, 64);
  const Coefficient a = Coefficient::sampled(
      g,
      [](const double* x, const double* y) {
        return 2.0 + 0.5 * std::sin(2.0 * kPi * x[0]) * std::sin(2.0 * kPi * y[0]);
      },
      kCls);
  const double s = 0.6;
  std::mt19937_64 seeds(3);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const VectorField u = random_band_limited(g, 8, seeds());
    const VectorField v = random_band_limited(g, 8, seeds());
    const double lhs = grid_inner(apply_operator(a, s, u), v);
    const double rhs = bilinear_form(a, s, u, v);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("constant-coefficient rows match the spectral operator") {
  const Coefficient one = Coefficient::constant(1.0, kCls);
  const double s = 0.5;
  const LameSymbolConstants consts = derive_ell_constants(1, s);
  const int k = 6;
  const double exact = std::pow(2.0 * kPi * k, 2.0 * s) * consts.total();
  double coarse = 0.0;
  double fine = 0.0;
  for (int n : {1024, 2048}) {
    const GridSpec g = make_grid(1, n);
    const VectorField w = longitudinal_wave(g, k, 0);
    const double v = grid_inner(apply_operator(one, s, w), w) /
                     grid_inner(w, w);
    (n == 1024 ? coarse : fine) = v;
  }
  const double p = 2.0 - 2.0 * s;
  const double ext = (std::pow(2.0, p) * fine - coarse) / (std::pow(2.0, p) - 1.0);
  CHECK(std::abs(ext - exact) < 1e-3 * exact);
}

TEST_CASE("an isolated coefficient row reduces to the tail correction") {
  const GridSpec g = make_grid(1, 32);
  const std::size_t n = g.nodes();
  std::vector<double> table(n * (n + 1) / 2, 0.0);
  const Coefficient skeleton = Coefficient::general(g, table, kCls);
  // 1 on the whole diagonal, plus off-diagonal couplings away from node 0
  for (int i = 0; i < g.nodes(); ++i) table[skeleton.pair_index(i, i)] = 1.0;
  for (int i = 1; i < g.nodes(); ++i)
    for (int j = i + 1; j < g.nodes(); ++j)
      table[skeleton.pair_index(i, j)] = 0.7;
  const Coefficient a = Coefficient::general(g, table, kCls);

  QuadratureSpec quad;
  const double s = 0.5;
  const VectorField u = random_band_limited(g, 5, 8);
  const VectorField out = apply_operator(a, s, u, quad);
  const double expected = quad.tail_coefficient(g, s) * u.value(0, 0);
  CHECK(std::abs(out.value(0, 0) - expected) < 1e-13 * std::abs(expected));
}

TEST_CASE("separable fast path equals the dense path") {
  const double s = 0.45;
  SUBCASE("1-D, constant profile also matches the constant dense path") {
    const GridSpec g = make_grid(1, 256);
    std::vector<double> prof(g.nodes(), 1.0);
    const Coefficient one = Coefficient::constant(1.0, kCls);
    const VectorField u = random_band_limited(g, 10, 4);
    const VectorField fast = separable_fast_apply(prof, s, u);
    CHECK(max_abs_diff(fast, apply_operator(one, s, u)) <
          1e-10 * max_abs(fast));

    // and the spectral constant-coefficient operator under refinement
    const GridSpec fine = make_grid(1, 2048);
    const std::vector<double> prof_fine(fine.nodes(), 1.0);
    const VectorField w = longitudinal_wave(fine, 6, 0);
    const LameSymbolConstants consts = derive_ell_constants(1, s);
    const VectorField spectral = vector_frac_laplacian(w, s, consts);
    CHECK(max_abs_diff(separable_fast_apply(prof_fine, s, w), spectral) <
          1e-2 * max_abs(spectral));
  }
  SUBCASE("1-D, smooth profile, N = 256") {
    const GridSpec g = make_grid(1, 256);
    std::vector<double> prof(g.nodes());
    double x[1] = {0.0};
    for (int i = 0; i < g.nodes(); ++i) {
      g.node_coords(i, x);
      prof[i] = 2.0 + 0.7 * std::sin(2.0 * kPi * x[0]) +
                0.2 * std::cos(4.0 * kPi * x[0]);
    }
    const Coefficient a = Coefficient::separable(g, prof, kCls);
    const VectorField u = random_band_limited(g, 10, 5);
    const VectorField fast = separable_fast_apply(a, s, u);
    const VectorField dense = apply_operator(a, s, u);
    CHECK(max_abs_diff(fast, dense) < 1e-10 * max_abs(dense));
  }
  SUBCASE("2-D, smooth profile, N = 32") {
    const GridSpec g = make_grid(2, 32);
    std::vector<double> prof(g.nodes());
    double x[2] = {0.0, 0.0};
    for (int i = 0; i < g.nodes(); ++i) {
      g.node_coords(i, x);
      prof[i] = 1.5 + 0.4 * std::sin(2.0 * kPi * x[0]) * std::cos(2.0 * kPi * x[1]);
    }
    const Coefficient a = Coefficient::separable(g, prof, kCls);
    const VectorField u = random_band_limited(g, 6, 6);
    CHECK(max_abs_diff(separable_fast_apply(a, s, u), apply_operator(a, s, u)) <
          1e-10 * max_abs(u));
  }
  SUBCASE("non-separable coefficients are rejected") {
    const GridSpec g = make_grid(1, 32);
    const Coefficient c = Coefficient::constant(1.0, kCls);
    CHECK_THROWS_AS((void)separable_fast_apply(c, s, VectorField(g)),
                    std::invalid_argument);
  }
}

TEST_CASE("energy: zero field, nonnegativity for nonnegative kernels") {
  const GridSpec g = make_grid(1, 64);
  const Coefficient one = Coefficient::constant(1.5, kCls);
  CHECK(energy(one, 0.5, VectorField(g), VectorField(g)) == 0.0);
  const VectorField u = random_band_limited(g, 6, 9);
  CHECK(energy(one, 0.5, u, VectorField(g)) >= 0.0);

  // pointwise-nonnegative nonconstant kernels keep the form nonnegative
  const Coefficient pos = Coefficient::sampled(
      g,
      [](const double* x, const double* y) {
        return 2.0 + std::sin(2.0 * kPi * x[0]) * std::sin(2.0 * kPi * y[0]);
      },
      kCls);
  std::mt19937_64 seeds(29);
  for (int trial = 0; trial < 10; ++trial) {
    const VectorField v = random_band_limited(g, 8, seeds());
    CHECK(bilinear_form(pos, 0.4, v, v) >= 0.0);
  }
}

TEST_CASE("projected seminorm equals the full Gagliardo sum in 1-D") {
  const GridSpec g = make_grid(1, 128);
  const VectorField u = random_band_limited(g, 9, 10);
  const double proj = projected_seminorm(u, 0.7);
  const double full = gagliardo_seminorm(u, 0.7);
  CHECK(proj >= 0.0);
  CHECK(std::abs(proj - full) < 1e-12 * full);
  CHECK(projected_seminorm(VectorField(g), 0.7) == 0.0);
}

TEST_CASE("translation covariance of constant-coefficient rows") {
  const GridSpec g = make_grid(1, 64);
  const Coefficient one = Coefficient::constant(1.0, kCls);
  const VectorField u = random_band_limited(g, 6, 12);
  const VectorField shifted = testsupport::cyclic_shift(u, 13, 0);
  const VectorField a = apply_operator(one, 0.5, shifted);
  const VectorField b =
      testsupport::cyclic_shift(apply_operator(one, 0.5, u), 13, 0);
  CHECK(max_abs_diff(a, b) < 1e-12 * max_abs(b));
}

TEST_CASE("refinement deltas of the pair form shrink monotonically") {
  const Coefficient one = Coefficient::constant(1.0, kCls);
  const double s = 0.5;
  std::vector<double> values;
  for (int n : {64, 128, 256, 512}) {
    const GridSpec g = make_grid(1, n);
    const VectorField u = random_band_limited(g, 4, 21);
    const VectorField v = random_band_limited(g, 4, 22);
    values.push_back(bilinear_form(one, s, u, v));
  }
  const double d1 = std::abs(values[1] - values[0]);
  const double d2 = std::abs(values[2] - values[1]);
  const double d3 = std::abs(values[3] - values[2]);
  CHECK(d2 < d1);
  CHECK(d3 < d2);
}

TEST_CASE("coefficient tables round trip through the text format") {
  const GridSpec g = make_grid(1, 16);
  const Coefficient a = Coefficient::sampled(
      g,
      [](const double* x, const double* y) {
        return 1.0 + 0.3 * std::cos(2.0 * kPi * (x[0] + y[0]));
      },
      kCls);
  const std::string path =
      (std::filesystem::temp_directory_path() / "fraclame_table_test.txt")
          .string();
  write_coefficient_table(path, a);
  const Coefficient b = read_coefficient_table(path);
  CHECK(b.grid() == g);
  CHECK(b.cls().alpha == kCls.alpha);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(0, g.nodes() - 1);
  for (int t = 0; t < 200; ++t) {
    const int i = pick(rng), j = pick(rng);
    CHECK(a.eval(i, j) == b.eval(i, j));  // %.17g is lossless for doubles
    CHECK(b.eval(i, j) == b.eval(j, i));
  }
  std::filesystem::remove(path);
}

TEST_CASE("quadrature spec validation") {
  const GridSpec g = make_grid(2, 32);
  QuadratureSpec quad;
  quad.tail_radius_boxes = 0.5;  // below half the 2-D box diagonal
  CHECK_THROWS_AS(quad.validate(g), std::invalid_argument);
  quad.tail_policy = QuadratureSpec::TailPolicy::kNone;
  CHECK_NOTHROW(quad.validate(g));
  CHECK(quad.tail_coefficient(g, 0.5) == 0.0);
}
