#pragma once

#include <cstdint>
#include <vector>

#include "fraclame/coefficient.hpp"
#include "fraclame/grid.hpp"
#include "fraclame/nonlocal.hpp"
#include "fraclame/symbols.hpp"

namespace fraclame {

/// Volume-constraint masks: interior nodes (Omega) where the equation is
/// enforced and the solution may be nonzero, plus an optional probe
/// subdomain (Omega' strictly inside Omega) used by the diagnostics.
struct DomainMask {
  GridSpec grid;
  std::vector<std::uint8_t> interior;
  std::vector<std::uint8_t> probe;

  /// Centered boxes: Omega of side omega_fraction * L, probe of side
  /// probe_fraction * L (0 disables the probe).
  static DomainMask centered_box(const GridSpec& grid, double omega_fraction,
                                 double probe_fraction = 0.0);

  int interior_count() const;
  /// interior inside the support sub-box; probe nodes >= 2 cells from the
  /// interior boundary. Throws on violation.
  void validate() const;
};

enum class SolveStatus { kConverged, kMaxIter, kIndefiniteDetected };

struct SolveReport {
  VectorField solution;
  int iterations = 0;
  std::vector<double> residual_history;  // relative residual per iteration
  std::vector<double> energy_history;    // Dirichlet CG path only
  SolveStatus status = SolveStatus::kMaxIter;
  bool dropped_zero_mode = false;
};

/// Conjugate-gradient minimization of E(u) = 1/2 B_A(u,u) - <f,u> over
/// fields vanishing outside Omega (the constraint is exact: exterior
/// values stay zero). Converged means the grid L2 norm of the interior
/// residual f - L u dropped below tol relative to the data norm.
/// A direction of nonpositive curvature stops the run with
/// kIndefiniteDetected, the discrete signature of a coercivity failure.
SolveReport solve_dirichlet(const Coefficient& A, double s,
                            const VectorField& f, const DomainMask& mask,
                            double tol, int max_iter,
                            const QuadratureSpec& quad = {});

/// Exact spectral solve of the constant-weight system
///   (-Delta)^{(2s-t)/2} ( abar [ (-Delta)^{t/2} u
///                                + c R x R (-Delta)^{t/2} u ] )
///   = (-Delta)^{(2s-t)/2} f1 + f2
/// via u = (1/abar) I^t D^{-1} ( f1 + I^{2s-t} f2 ). Right-hand sides are
/// projected to mean zero; the dropped constant is reported on the result.
VectorField solve_constant_lame(double abar, double t, double two_s_minus_t,
                                double c, const VectorField& f1,
                                const VectorField& f2);

/// Variable positive weight abar(x): Richardson iteration preconditioned
/// by the constant-weight solve at the geometric mean of abar. Residuals
/// are measured on the once-smoothed equation
///   abar . G u = f1 + I^{2s-t} f2,  G = (I + c R x R)(-Delta)^{t/2},
/// relative to the right-hand side. Contraction holds when
/// max(abar)/min(abar) <= 1.5; larger oscillation may exhaust max_iter
/// (status kMaxIter with the history retained).
SolveReport solve_weighted_lame(const std::vector<double>& abar, double t,
                                double two_s_minus_t, double c,
                                const VectorField& f1, const VectorField& f2,
                                double tol, int max_iter);

/// Outer defect-correction iteration for the full variable-coefficient
/// operator: u <- u + M^{-1} (F - L_A u), where F is the assembled data
/// (-Delta)^{(2s-t)/2} f1 + f2, L_A the real-space operator, and M the
/// frozen-diagonal comparison operator ell1 (-Delta)^{(2s-t)/2}
/// (A_D (I + c R x R) (-Delta)^{t/2} . ) solved spectrally. The constant
/// mode, which the spectral preconditioner cannot see, is corrected
/// exactly through the tail mass. Declares divergence after three
/// consecutive residual increases. The mask selects the probe set used by
/// callers to test the weak form; the iteration itself is unconstrained.
SolveReport solve_full_perturbative(const Coefficient& A, double s, double t,
                                    const VectorField& f1,
                                    const VectorField& f2,
                                    const DomainMask& mask, double tol,
                                    int outer_max,
                                    const QuadratureSpec& quad = {},
                                    const LameSymbolConstants* consts = nullptr);

/// Dense interior stiffness S[(i,a),(j,b)] = B_A(e_ia, e_jb) in row-major
/// order (m x m, m = interior_count * dim). Small grids only.
std::vector<double> assemble_dense_stiffness(const Coefficient& A, double s,
                                             const DomainMask& mask,
                                             const QuadratureSpec& quad = {});

/// Smallest eigenvalue of the assembled interior stiffness; negative
/// values certify a coercivity failure at the discrete level.
double smallest_stiffness_eigenvalue(const Coefficient& A, double s,
                                     const DomainMask& mask,
                                     const QuadratureSpec& quad = {});

}  // namespace fraclame
