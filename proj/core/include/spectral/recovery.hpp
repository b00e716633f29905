#ifndef SPECTRAL_RECOVERY_HPP
#define SPECTRAL_RECOVERY_HPP

#include <functional>
#include <vector>

#include "spectral/sampling.hpp"
#include "spectral/toeplitz.hpp"
#include "spectral/types.hpp"

namespace spectral {

/// Rank-revealing atomic decomposition S ~= sum_k d_k b(f_k,0) b(f_k,0)*.
struct Decomposition {
  std::vector<Frequency> freqs;
  std::vector<double> powers;  // all > 0
  int rank = 0;
  double residual = 0.0;  // ||S - rebuilt||_F / ||S||_F
  bool success = false;
  bool rank_saturated = false;  // rank == m: the decomposition need not be unique
};

struct DecomposeOptions {
  double rank_tol = 1e-6;   // eigenvalues above rank_tol * lambda_max count
  Eigen::Index grid_size = 0;  // 0: max(4096, 32 n)
  double residual_tol = 1e-6;  // success threshold on the relative residual
};

/// Locates frequencies by scanning the signal-subspace alignment
/// ||P b(f,0)||^2 / ||b(f,0)||^2 over a uniform grid, refining each local
/// maximum by golden-section search to 1e-10, then fits the powers by
/// nonnegative least squares against the rank-one atom outer products.
/// Candidate peaks closer than 1/(2(n-1)) are merged, keeping the stronger.
Decomposition decompose_partial_psd(const DenseHermitian& S, const SamplingOperator& M,
                                    const DecomposeOptions& opts = {});

/// Least-squares fit of y against the columns b(f_k, 0); amplitudes below
/// 1e-8 * max|c| are dropped. Sets *ill_conditioned (when non-null) if the
/// atom matrix condition number exceeds 1e12.
SpectralSupport fit_amplitudes(const ComplexSignal& y, const SamplingOperator& M,
                               const std::vector<Frequency>& freqs,
                               bool* ill_conditioned = nullptr);

struct SupportError {
  double matched_freq_err = 0.0;  // max wrap distance over matched pairs
  double amp_err = 0.0;           // max |amp difference| over matched pairs
  int unmatched = 0;              // entries left unpaired on either side
};

/// Greedy closest-pair matching between two supports (both sorted; ties
/// resolved deterministically).
SupportError support_error(const SpectralSupport& est, const SpectralSupport& truth);

namespace detail {
/// Golden-section maximization of a unimodal-near-peak function on [lo, hi]
/// to the given x-resolution. Used by the grid scans here and in certificate
/// verification.
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double xtol);

/// Golden section followed by parabolic-vertex polishing; value comparisons
/// alone stall near sqrt(eps) from a quadratic peak, the vertex step does not.
double refine_peak(const std::function<double(double)>& f, double lo, double hi);
}  // namespace detail

}  // namespace spectral

#endif  // SPECTRAL_RECOVERY_HPP
