#include "spectral/solver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace spectral {

DenseHermitian psd_project(const DenseHermitian& H) {
  if (!H.mat().allFinite())
    throw std::runtime_error("psd_project: non-finite entries");
  Eigen::SelfAdjointEigenSolver<Mat> eig(H.mat());
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("psd_project: eigendecomposition failed");
  Eigen::VectorXd lam = eig.eigenvalues().cwiseMax(0.0);
  return DenseHermitian(eig.eigenvectors() * lam.asDiagonal() *
                        eig.eigenvectors().adjoint());
}

namespace {

// eigenvalue clamp on a raw Hermitian matrix, in place
void psd_project_raw(Mat& H) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(H);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("psd_project: eigendecomposition failed");
  Eigen::VectorXd lam = eig.eigenvalues().cwiseMax(0.0);
  H = eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().adjoint();
}

struct AdmmState {
  Mat Z, U, G;
  double rho;
  int adaptations = 0;
  Residuals res;

  explicit AdmmState(Eigen::Index dim, double rho0)
      : Z(Mat::Zero(dim, dim)), U(Mat::Zero(dim, dim)), G(Mat::Zero(dim, dim)), rho(rho0) {}

  // projection, dual update, residuals; returns true on convergence
  bool step(const SolverParams& p, Mat& Zprev) {
    const Eigen::Index dim = Z.rows();
    Zprev.swap(Z);
    Z = G + U;
    psd_project_raw(Z);
    U += G - Z;
    res.primal = (G - Z).norm();
    res.dual = rho * (Z - Zprev).norm();
    const double eps_pri =
        dim * p.tol_abs + p.tol_rel * std::max(G.norm(), Z.norm());
    const double eps_dual = dim * p.tol_abs + p.tol_rel * (rho * U.norm());
    return res.primal <= eps_pri && res.dual <= eps_dual;
  }

  void maybe_adapt(const SolverParams& p, int iter) {
    if (!p.rho_adapt || adaptations >= 8 || iter == 0 || iter % 25 != 0) return;
    if (res.primal > 10.0 * res.dual) {
      rho *= 2.0;
      U /= 2.0;
      ++adaptations;
    } else if (res.dual > 10.0 * res.primal) {
      rho /= 2.0;
      U *= 2.0;
      ++adaptations;
    }
  }
};

FullSdpSolution solve_full_impl(const ComplexSignal& signal, const SamplingOperator* M,
                                const SolverParams& params) {
  const Eigen::Index n = M ? M->cols() : signal.size();
  FullSdpSolution sol;
  if (signal.is_zero()) {
    sol.u = Vec::Zero(n);
    sol.x = Vec::Zero(n);
    sol.psd_block = DenseHermitian(Mat::Zero(n + 1, n + 1));
    sol.converged = true;
    return sol;
  }

  Eigen::LLT<Mat> mm_llt;
  if (M) mm_llt.compute(M->matrix() * M->matrix().adjoint());

  AdmmState st(n + 1, params.rho);
  Mat Zprev = Mat::Zero(n + 1, n + 1);
  Vec u = Vec::Zero(n);
  Vec x = M ? Vec(M->matrix().adjoint() * mm_llt.solve(signal.vec())) : signal.vec();
  double t = 0.0;

  for (int iter = 0; iter < params.max_iter; ++iter) {
    // W = Z - U restricted to the blocks the variables control
    for (Eigen::Index d = 0; d < n; ++d) {
      Complex s = 0.0;
      for (Eigen::Index j = 0; j + d < n; ++j) s += st.Z(j, j + d) - st.U(j, j + d);
      u[d] = s / static_cast<double>(n - d);
    }
    u[0] = Complex(u[0].real() - 1.0 / (2.0 * st.rho * n), 0.0);
    t = std::real(st.Z(n, n) - st.U(n, n)) - 1.0 / (2.0 * st.rho);
    if (M) {
      Vec wx = st.Z.col(n).head(n) - st.U.col(n).head(n);
      x = wx + M->matrix().adjoint() * mm_llt.solve(signal.vec() - M->matrix() * wx);
    }

    for (Eigen::Index j = 0; j < n; ++j) {
      st.G(j, j) = u[0];
      for (Eigen::Index k = j + 1; k < n; ++k) {
        st.G(j, k) = u[k - j];
        st.G(k, j) = std::conj(u[k - j]);
      }
    }
    st.G.col(n).head(n) = x;
    st.G.row(n).head(n) = x.adjoint();
    st.G(n, n) = t;

    const bool done = st.step(params, Zprev);
    sol.iters = iter + 1;
    if (params.record_trace)
      sol.trace.push_back({iter, st.res.primal, st.res.dual,
                           u[0].real() / 2.0 + std::max(t, 0.0) / 2.0});
    if (done) {
      sol.converged = true;
      break;
    }
    st.maybe_adapt(params, iter);
  }

  sol.u = u;
  sol.t = std::max(t, 0.0);
  sol.x = x;
  sol.psd_block = DenseHermitian(st.Z);
  sol.objective = u[0].real() / 2.0 + sol.t / 2.0;  // tr(T_n(u))/(2n) = u0/2
  sol.residuals = st.res;
  return sol;
}

}  // namespace

FullSdpSolution solve_full_sdp(const ComplexSignal& x, const SolverParams& params) {
  return solve_full_impl(x, nullptr, params);
}

FullSdpSolution solve_full_sdp_constrained(const ComplexSignal& y, const SamplingOperator& M,
                                           const SolverParams& params) {
  if (y.size() != M.rows())
    throw std::invalid_argument("solve_full_sdp_constrained: y length must equal rows(M)");
  if (!M.validity().full_rank)
    throw std::invalid_argument("solve_full_sdp_constrained: M is rank-deficient");
  return solve_full_impl(y, &M, params);
}

ReducedSdpSolution solve_reduced_sdp(const ComplexSignal& y, const SamplingOperator& M,
                                     const SolverParams& params) {
  if (y.size() != M.rows())
    throw std::invalid_argument("solve_reduced_sdp: y length must equal rows(M)");
  const ValidityReport& rep = M.validity();
  if (!rep.all()) {
    std::string failed;
    if (!rep.full_rank) failed = "full_rank";
    else if (!rep.range_condition) failed = "range_condition";
    else failed = "atom_norm_constant";
    throw std::invalid_argument("solve_reduced_sdp: sampling operator failed the " + failed +
                                " check");
  }
  const Eigen::Index m = M.rows();

  ReducedSdpSolution sol;
  if (y.is_zero()) {
    sol.v = Vec::Zero(m);
    sol.dual_vector = Vec::Zero(m);
    sol.psd_block = DenseHermitian(Mat::Zero(m + 1, m + 1));
    sol.converged = true;
    return sol;
  }

  // realified basis images of v -> R_M(v); the v-update is a fixed
  // least-squares problem whose normal matrix is assembled once
  const Eigen::Index dof = 2 * m;
  std::vector<Mat> basis(dof);
  for (Eigen::Index i = 0; i < m; ++i) {
    Vec e = Vec::Zero(m);
    e[i] = 1.0;
    basis[i] = r_m_apply(M, e).mat();
    e[i] = Complex(0.0, 1.0);
    basis[m + i] = r_m_apply(M, e).mat();
  }
  Eigen::MatrixXd normal(dof, dof);
  Eigen::VectorXd grad(dof);
  for (Eigen::Index i = 0; i < dof; ++i) {
    grad[i] = basis[i].trace().real() / (2.0 * m);
    for (Eigen::Index j = i; j < dof; ++j) {
      const double val = basis[i].cwiseProduct(basis[j].conjugate()).sum().real();
      normal(i, j) = val;
      normal(j, i) = val;
    }
  }
  // directions R_M annihilates (e.g. Im v0 on selection patterns) get pinned to 0
  const double reg = 1e-12 * std::max(1.0, normal.trace() / dof);
  normal.diagonal().array() += reg;
  Eigen::LDLT<Eigen::MatrixXd> normal_ldlt(normal);

  AdmmState st(m + 1, params.rho);
  Mat Zprev = Mat::Zero(m + 1, m + 1);
  Eigen::VectorXd rhs(dof), xi(dof);
  Vec v = Vec::Zero(m);
  Mat Wtl(m, m);
  double t = 0.0;

  for (int iter = 0; iter < params.max_iter; ++iter) {
    Wtl = st.Z.topLeftCorner(m, m) - st.U.topLeftCorner(m, m);
    for (Eigen::Index i = 0; i < dof; ++i)
      rhs[i] = basis[i].cwiseProduct(Wtl.conjugate()).sum().real() - grad[i] / st.rho;
    xi = normal_ldlt.solve(rhs);
    v = xi.head(m) + Complex(0.0, 1.0) * xi.tail(m);
    t = std::real(st.Z(m, m) - st.U(m, m)) - 1.0 / (2.0 * st.rho);

    st.G.topLeftCorner(m, m).setZero();
    for (Eigen::Index i = 0; i < dof; ++i)
      if (xi[i] != 0.0) st.G.topLeftCorner(m, m) += xi[i] * basis[i];
    st.G.col(m).head(m) = y.vec();
    st.G.row(m).head(m) = y.vec().adjoint();
    st.G(m, m) = t;

    sol.imag_drift =
        std::max(sol.imag_drift, std::abs((M.matrix().col(0).adjoint() * v).value().imag()));

    const bool done = st.step(params, Zprev);
    sol.iters = iter + 1;
    if (params.record_trace)
      sol.trace.push_back({iter, st.res.primal, st.res.dual,
                           grad.dot(xi) + std::max(t, 0.0) / 2.0});
    if (done) {
      sol.converged = true;
      break;
    }
    st.maybe_adapt(params, iter);
  }

  sol.v = v;
  sol.t = std::max(t, 0.0);
  sol.psd_block = DenseHermitian(st.Z);
  sol.objective = grad.dot(xi) + sol.t / 2.0;  // tr(R_M(v))/(2m) + t/2
  sol.residuals = st.res;
  sol.dual_vector = -st.rho * (st.U.col(m).head(m));
  return sol;
}

double atomic_norm_value(const FullSdpSolution& sol) { return sol.objective; }
double atomic_norm_value(const ReducedSdpSolution& sol) { return sol.objective; }

}  // namespace spectral
