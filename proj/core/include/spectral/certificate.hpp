#ifndef SPECTRAL_CERTIFICATE_HPP
#define SPECTRAL_CERTIFICATE_HPP

#include <numbers>
#include <vector>

#include "spectral/sampling.hpp"
#include "spectral/solver.hpp"
#include "spectral/types.hpp"

namespace spectral {

/// Separation constants for the tightness of the atomic relaxation:
/// a spacing of C/(n-1) is necessary with C = 1/pi and sufficient with
/// C = 2.56.
inline constexpr double kSeparationNecessary = 1.0 / std::numbers::pi;
inline constexpr double kSeparationSufficient = 2.56;

/// Coefficients q of the trigonometric polynomial
///   Q(f) = sum_{j=0}^{n-1} q_j e^{i 2 pi f j}
/// (evaluation of sum q_j z^j at z on the unit circle; the pairing is
/// coefficient-linear, no conjugation). Under this convention a certificate
/// extracted from the semidefinite dual interpolates conj(c_k)/|c_k| at the
/// support frequencies; see verify_certificate.
struct DualCertificate {
  enum class Source { kExtractedFromDual, kUserSupplied };
  Vec q;
  Source source = Source::kUserSupplied;
};

struct CertificateReport {
  bool range_ok = false;        // q in range(M*), relative residual <= 1e-8
  double interpolation_err = 0.0;  // max_k |Q(f_k) - conj(sign c_k)|
  double off_support_max = 0.0;    // max |Q| outside the guard intervals
  bool passed = false;          // range_ok && interp <= tol && off_max < 1
};

struct VerifyOptions {
  Eigen::Index grid_size = 0;  // 0: max(16 n, 4096)
  double guard = -1.0;         // < 0: 1/(4(n-1))
  double tol = 1e-3;           // interpolation tolerance
};

/// Q evaluated at a frequency.
Complex dual_poly_eval(const DualCertificate& cert, Frequency f);

/// Builds a certificate from the dual block of a converged reduced solve:
/// q = conj(M* q_m) with q_m = -2 w rescaled so that Re<q_m, y> equals the
/// primal objective exactly. Throws on non-converged input.
DualCertificate extract_dual_certificate(const ReducedSdpSolution& sol,
                                         const SamplingOperator& M, const ComplexSignal& y);

/// Checks the three certificate conditions: range membership, interpolation
/// of the conjugate unit signs on the support, |Q| < 1 on the grid outside
/// guard-width wrap intervals around each support frequency (grid maxima are
/// sharpened by golden-section refinement). An empty support checks |Q| over
/// the whole circle with interpolation_err = 0.
CertificateReport verify_certificate(const DualCertificate& cert, const SamplingOperator& M,
                                     const SpectralSupport& support,
                                     const VerifyOptions& opts = {});

struct LocalizationResult {
  std::vector<Frequency> freqs;
  bool saturated = false;  // |Q| ~ 1 on most of the circle (degenerate input)
};

/// Refined local maximizers of |Q| with |Q| >= 1 - tol, merged within
/// 1/(2(n-1)) wrap distance.
LocalizationResult localize_from_dual(const DualCertificate& cert, Eigen::Index grid_size,
                                      double tol);

}  // namespace spectral

#endif  // SPECTRAL_CERTIFICATE_HPP
