#ifndef SPECTRAL_TOEPLITZ_HPP
#define SPECTRAL_TOEPLITZ_HPP

#include "spectral/types.hpp"

namespace spectral {

class SamplingOperator;

/// Dense Hermitian matrix; the constructor averages the input with its
/// adjoint, so the invariant H == H* holds exactly afterwards.
class DenseHermitian {
 public:
  DenseHermitian() = default;
  explicit DenseHermitian(const Mat& raw);

  const Mat& mat() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

  /// Entrywise max |H - H*|/2 of the raw input, i.e. how far the input was
  /// from Hermitian before symmetrization.
  double asymmetry() const { return asymmetry_; }

 private:
  Mat mat_;
  double asymmetry_ = 0.0;
};

/// First-row representation u of the Hermitian Toeplitz matrix T_n(u):
/// T[j][k] = u[k-j] for k >= j and conj(u[j-k]) below the diagonal.
/// Requires Im(u[0]) within 1e-12 of zero; the stored u0 is made exactly real.
class HermitianToeplitz {
 public:
  explicit HermitianToeplitz(Vec first_row);

  const Vec& first_row() const { return u_; }
  Eigen::Index dim() const { return u_.size(); }

  DenseHermitian materialize() const;

  static constexpr double kRealTolerance = 1e-12;

 private:
  Vec u_;
};

/// T_n(u) as a dense matrix. Throws if Im(u[0]) exceeds the tolerance.
DenseHermitian toeplitz_build(const Vec& u);

/// T_n*(H): entry k is the sum of H's k-th upper diagonal.
Vec toeplitz_adjoint(const Mat& H);
Vec toeplitz_adjoint(const DenseHermitian& H);

/// R_M(v) = M T_n(M* v) M*, Hermitian-symmetrized. Intermediate iterates may
/// give (M* v)[0] a small imaginary part; the build keeps the real part and
/// the symmetrization absorbs the rest (reported via DenseHermitian::asymmetry).
DenseHermitian r_m_apply(const SamplingOperator& M, const Vec& v);

/// R_M*(S) = M T_n*(M* S M).
Vec r_m_adjoint(const SamplingOperator& M, const Mat& S);

namespace detail {
/// Toeplitz build that forces u0 to its real part instead of throwing;
/// returns the dropped |Im(u0)| through *imag_drift when non-null.
Mat toeplitz_build_lenient(const Vec& u, double* imag_drift);
}  // namespace detail

}  // namespace spectral

#endif  // SPECTRAL_TOEPLITZ_HPP
