#ifndef SPECTRAL_SOLVER_HPP
#define SPECTRAL_SOLVER_HPP

#include <vector>

#include "spectral/sampling.hpp"
#include "spectral/toeplitz.hpp"
#include "spectral/types.hpp"

namespace spectral {

/// Operator-splitting (ADMM) parameters. The defaults converge without tuning
/// across the problem sizes this library targets (n up to a few hundred).
struct SolverParams {
  double rho = 1.0;
  double tol_abs = 1e-7;
  double tol_rel = 1e-6;
  int max_iter = 20000;
  bool rho_adapt = true;
  bool record_trace = false;
};

struct Residuals {
  double primal = 0.0;
  double dual = 0.0;
};

struct TracePoint {
  int iter;
  double primal_res;
  double dual_res;
  double objective;
};

/// Output of the (n+1)-dimensional program
///   min tr(T_n(u))/(2n) + t/2  s.t.  [[T_n(u), x], [x*, t]] >= 0
/// optionally with the measurement constraint y = M x, in which case x is a
/// free variable and is returned alongside (u, t).
struct FullSdpSolution {
  Vec u;
  double t = 0.0;
  Vec x;  // constrained mode only; otherwise the input signal
  DenseHermitian psd_block;
  double objective = 0.0;
  int iters = 0;
  Residuals residuals;
  bool converged = false;
  double imag_drift = 0.0;  // max |Im (u)_0| absorbed during iterations
  std::vector<TracePoint> trace;
};

/// Output of the (m+1)-dimensional program
///   min tr(R_M(v))/(2m) + t/2  s.t.  [[R_M(v), y], [y*, t]] >= 0.
/// dual_vector is the off-diagonal block of the converged dual matrix,
/// the raw material for certificate extraction.
struct ReducedSdpSolution {
  Vec v;
  double t = 0.0;
  DenseHermitian psd_block;
  double objective = 0.0;
  int iters = 0;
  Residuals residuals;
  bool converged = false;
  Vec dual_vector;
  double imag_drift = 0.0;  // max |Im (M* v)_0| absorbed during iterations
  std::vector<TracePoint> trace;
};

/// Frobenius-nearest positive semidefinite matrix: eigendecompose and clamp
/// negative eigenvalues to zero.
DenseHermitian psd_project(const DenseHermitian& H);

/// Atomic-norm value of a fully observed signal (the program above with x
/// fixed). The infimum equals the gauge norm of x over the full atom set.
FullSdpSolution solve_full_sdp(const ComplexSignal& x, const SolverParams& params = {});

/// Same objective with x free subject to y = M x. Requires full-rank M.
FullSdpSolution solve_full_sdp_constrained(const ComplexSignal& y, const SamplingOperator& M,
                                           const SolverParams& params = {});

/// Reduced program over the compressed operator R_M. Requires M to pass all
/// three validity checks (throws std::invalid_argument naming the failed one
/// otherwise). Note the program represents the partial atomic norm exactly
/// only on difference-closed selection patterns; see difference_set_closed().
ReducedSdpSolution solve_reduced_sdp(const ComplexSignal& y, const SamplingOperator& M,
                                     const SolverParams& params = {});

/// The reported objective: trace term plus t/2, with the 1/(2n) or 1/(2m)
/// scaling matching the solution kind.
double atomic_norm_value(const FullSdpSolution& sol);
double atomic_norm_value(const ReducedSdpSolution& sol);

}  // namespace spectral

#endif  // SPECTRAL_SOLVER_HPP
