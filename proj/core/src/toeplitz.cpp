#include "spectral/toeplitz.hpp"

#include <cmath>
#include <stdexcept>

#include "spectral/sampling.hpp"

namespace spectral {

DenseHermitian::DenseHermitian(const Mat& raw) {
  if (raw.rows() != raw.cols())
    throw std::invalid_argument("DenseHermitian: input must be square");
  asymmetry_ = (raw - raw.adjoint()).cwiseAbs().maxCoeff() / 2.0;
  mat_ = (raw + raw.adjoint()) / 2.0;
}

HermitianToeplitz::HermitianToeplitz(Vec first_row) : u_(std::move(first_row)) {
  if (u_.size() == 0) throw std::invalid_argument("HermitianToeplitz: empty first row");
  if (std::abs(u_[0].imag()) > kRealTolerance)
    throw std::invalid_argument("HermitianToeplitz: Im(u0) exceeds tolerance");
  u_[0] = Complex(u_[0].real(), 0.0);
}

DenseHermitian HermitianToeplitz::materialize() const {
  return DenseHermitian(detail::toeplitz_build_lenient(u_, nullptr));
}

namespace detail {

Mat toeplitz_build_lenient(const Vec& u, double* imag_drift) {
  const Eigen::Index n = u.size();
  if (imag_drift) *imag_drift = std::abs(u[0].imag());
  Mat H(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    H(j, j) = Complex(u[0].real(), 0.0);
    for (Eigen::Index k = j + 1; k < n; ++k) {
      H(j, k) = u[k - j];
      H(k, j) = std::conj(u[k - j]);
    }
  }
  return H;
}

}  // namespace detail

DenseHermitian toeplitz_build(const Vec& u) {
  return HermitianToeplitz(u).materialize();
}

Vec toeplitz_adjoint(const Mat& H) {
  if (H.rows() != H.cols())
    throw std::invalid_argument("toeplitz_adjoint: input must be square");
  const Eigen::Index n = H.rows();
  Vec out(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Complex s = 0.0;
    for (Eigen::Index j = 0; j + k < n; ++j) s += H(j, j + k);
    out[k] = s;
  }
  return out;
}

Vec toeplitz_adjoint(const DenseHermitian& H) { return toeplitz_adjoint(H.mat()); }

DenseHermitian r_m_apply(const SamplingOperator& M, const Vec& v) {
  if (v.size() != M.rows())
    throw std::invalid_argument("r_m_apply: v length must equal the row count of M");
  const Vec u = M.matrix().adjoint() * v;
  const Mat T = detail::toeplitz_build_lenient(u, nullptr);
  return DenseHermitian(M.matrix() * T * M.matrix().adjoint());
}

Vec r_m_adjoint(const SamplingOperator& M, const Mat& S) {
  if (S.rows() != S.cols() || S.rows() != M.rows())
    throw std::invalid_argument("r_m_adjoint: S must be square of size rows(M)");
  return M.matrix() * toeplitz_adjoint(Mat(M.matrix().adjoint() * S * M.matrix()));
}

}  // namespace spectral
