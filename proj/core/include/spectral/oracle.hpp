#ifndef SPECTRAL_ORACLE_HPP
#define SPECTRAL_ORACLE_HPP

#include <vector>

#include "spectral/sampling.hpp"
#include "spectral/types.hpp"

namespace spectral {

/// Grid-restricted basis-pursuit solution: sparse coefficients over the
/// uniform frequency grid k/grid_size with objective sum |c_k|. Independent
/// of the semidefinite path; used as a test reference.
struct GridSolution {
  Eigen::Index grid_size = 0;
  std::vector<std::pair<Eigen::Index, Complex>> coefficients;
  double objective = 0.0;
  double residual = 0.0;      // ||y - B c||_2
  double duality_gap = 0.0;   // objective minus a dual feasible value
  bool feasible = false;      // residual <= 1e-6 ||y||_2
};

/// min sum|c| s.t. y = sum_k c_k b(k/G), solved by splitting into an exact
/// affine projection step and a soft-threshold shrinkage step. Requires
/// grid_size >= 4 n.
GridSolution grid_atomic_norm(const ComplexSignal& y, const SamplingOperator& M,
                              Eigen::Index grid_size, int max_iter = 50000);

/// Exhaustive smallest-support fit over the frequency grid: searches supports
/// of size 1..s_max in order, least-squares fitting each, and returns the
/// first size achieving residual <= 1e-8 ||y||_2 (ties broken by smaller
/// residual). Refuses when the enumeration budget sum C(grid_size, k)
/// exceeds 1e7.
SpectralSupport exhaustive_sparse_fit(const ComplexSignal& y, const SamplingOperator& M,
                                      int s_max, Eigen::Index grid_size);

}  // namespace spectral

#endif  // SPECTRAL_ORACLE_HPP
