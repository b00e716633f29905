#include "spectral/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "spectral/atoms.hpp"

namespace spectral {

namespace detail {

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double xtol) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > xtol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  return (a + b) / 2.0;
}

double refine_peak(const std::function<double(double)>& f, double lo, double hi) {
  double x = golden_section_max(f, lo, hi, 1e-9);
  for (double h : {1e-6, 1e-8}) {
    const double fm = f(x - h), f0 = f(x), fp = f(x + h);
    const double denom = fm - 2.0 * f0 + fp;
    if (denom >= 0.0) continue;  // not a clean local max at this scale
    const double step = 0.5 * h * (fm - fp) / denom;
    if (std::abs(step) <= h && f(x + step) >= f0) x += step;
  }
  return x;
}

}  // namespace detail

namespace {

// b(f,0) evaluated through M without building the full atom when M selects
Vec compressed_atom(const SamplingOperator& M, double f) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (M.pattern()) {
    const auto& idx = M.pattern()->indices;
    Vec b(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t p = 0; p < idx.size(); ++p)
      b[static_cast<Eigen::Index>(p)] =
          std::polar(1.0, two_pi * std::fmod(f * static_cast<double>(idx[p]), 1.0));
    return b;
  }
  const Eigen::Index n = M.cols();
  Vec a(n);
  for (Eigen::Index j = 0; j < n; ++j)
    a[j] = std::polar(1.0, two_pi * std::fmod(f * static_cast<double>(j), 1.0));
  return M.matrix() * a;
}

// Lawson-Hanson active-set nonnegative least squares for the small SPD
// systems arising from power fitting: min ||G^(1/2)(d - ...)||, i.e.
// min d^T G d - 2 h^T d  s.t. d >= 0, with G symmetric PSD.
Eigen::VectorXd nnls_spd(const Eigen::MatrixXd& G, const Eigen::VectorXd& h) {
  const Eigen::Index k = h.size();
  Eigen::VectorXd d = Eigen::VectorXd::Zero(k);
  std::vector<bool> passive(k, false);
  const double tol = 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff());

  for (int outer = 0; outer < 3 * static_cast<int>(k) + 10; ++outer) {
    Eigen::VectorXd w = h - G * d;
    int best = -1;
    double wbest = tol;
    for (Eigen::Index i = 0; i < k; ++i)
      if (!passive[i] && w[i] > wbest) {
        wbest = w[i];
        best = static_cast<int>(i);
      }
    if (best < 0) break;
    passive[best] = true;

    for (int inner = 0; inner < 3 * static_cast<int>(k) + 10; ++inner) {
      std::vector<Eigen::Index> P;
      for (Eigen::Index i = 0; i < k; ++i)
        if (passive[i]) P.push_back(i);
      Eigen::MatrixXd Gp(P.size(), P.size());
      Eigen::VectorXd hp(P.size());
      for (std::size_t a = 0; a < P.size(); ++a) {
        hp[static_cast<Eigen::Index>(a)] = h[P[a]];
        for (std::size_t b = 0; b < P.size(); ++b)
          Gp(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = G(P[a], P[b]);
      }
      Gp.diagonal().array() += 1e-12 * std::max(1.0, Gp.trace() / std::max<double>(1, P.size()));
      Eigen::VectorXd z = Gp.ldlt().solve(hp);
      if ((z.array() > 0.0).all()) {
        d.setZero();
        for (std::size_t a = 0; a < P.size(); ++a) d[P[a]] = z[static_cast<Eigen::Index>(a)];
        break;
      }
      double alpha = 1.0;
      for (std::size_t a = 0; a < P.size(); ++a) {
        if (z[static_cast<Eigen::Index>(a)] <= 0.0) {
          const double da = d[P[a]];
          alpha = std::min(alpha, da / (da - z[static_cast<Eigen::Index>(a)]));
        }
      }
      for (std::size_t a = 0; a < P.size(); ++a) {
        d[P[a]] += alpha * (z[static_cast<Eigen::Index>(a)] - d[P[a]]);
        if (d[P[a]] <= 1e-14) {
          d[P[a]] = 0.0;
          passive[P[a]] = false;
        }
      }
    }
  }
  return d;
}

}  // namespace

Decomposition decompose_partial_psd(const DenseHermitian& S, const SamplingOperator& M,
                                    const DecomposeOptions& opts) {
  if (S.dim() != M.rows())
    throw std::invalid_argument("decompose_partial_psd: S must be rows(M) square");
  const Eigen::Index m = M.rows();
  const Eigen::Index n = M.cols();
  const Eigen::Index grid =
      opts.grid_size > 0 ? opts.grid_size : std::max<Eigen::Index>(4096, 32 * n);

  Decomposition dec;
  const double snorm = S.mat().norm();
  Eigen::SelfAdjointEigenSolver<Mat> eig(S.mat());
  const double lmax = eig.eigenvalues().size() ? eig.eigenvalues().maxCoeff() : 0.0;
  if (snorm == 0.0 || lmax <= 1e-14 * std::max(1.0, snorm)) {
    dec.success = true;
    return dec;
  }

  int rank = 0;
  for (Eigen::Index i = 0; i < m; ++i)
    if (eig.eigenvalues()[i] > opts.rank_tol * lmax) ++rank;
  dec.rank = rank;
  dec.rank_saturated = (rank == m);
  Mat Vr = eig.eigenvectors().rightCols(rank);

  auto score = [&](double f) {
    const Vec b = compressed_atom(M, f);
    const double nb = b.squaredNorm();
    return nb > 0.0 ? (Vr.adjoint() * b).squaredNorm() / nb : 0.0;
  };

  std::vector<double> sc(grid);
  for (Eigen::Index i = 0; i < grid; ++i) sc[i] = score(static_cast<double>(i) / grid);

  std::vector<Eigen::Index> cands;
  for (Eigen::Index i = 0; i < grid; ++i) {
    const double prev = sc[(i + grid - 1) % grid];
    const double next = sc[(i + 1) % grid];
    if (sc[i] >= prev && sc[i] >= next) cands.push_back(i);
  }
  std::sort(cands.begin(), cands.end(),
            [&](Eigen::Index a, Eigen::Index b) { return sc[a] > sc[b]; });

  const double peak_sep = n > 1 ? 1.0 / (2.0 * static_cast<double>(n - 1)) : 0.5;
  const double step = 1.0 / static_cast<double>(grid);
  std::vector<double> freqs;
  for (Eigen::Index i : cands) {
    if (static_cast<int>(freqs.size()) >= rank) break;
    const double fg = static_cast<double>(i) / grid;
    bool clash = false;
    for (double f : freqs)
      if (wrap_distance(f, fg) < peak_sep) {
        clash = true;
        break;
      }
    if (clash) continue;
    const double fr = detail::refine_peak(score, fg - step, fg + step);
    const double fw = Frequency(fr).value();
    clash = false;
    for (double f : freqs)
      if (wrap_distance(f, fw) < peak_sep) {
        clash = true;
        break;
      }
    if (!clash) freqs.push_back(fw);
  }
  std::sort(freqs.begin(), freqs.end());

  // nonnegative power fit against the rank-one atom outer products
  const auto k = static_cast<Eigen::Index>(freqs.size());
  std::vector<Vec> atoms(k);
  for (Eigen::Index i = 0; i < k; ++i) atoms[i] = compressed_atom(M, freqs[i]);
  Eigen::MatrixXd gram(k, k);
  Eigen::VectorXd rhs(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    rhs[i] = std::max(0.0, (atoms[i].adjoint() * S.mat() * atoms[i]).value().real());
    for (Eigen::Index j = 0; j < k; ++j)
      gram(i, j) = std::norm((atoms[i].adjoint() * atoms[j]).value());
  }
  Eigen::VectorXd d = k > 0 ? nnls_spd(gram, rhs) : Eigen::VectorXd();

  Mat rebuilt = Mat::Zero(m, m);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (d[i] > 0.0) {
      dec.freqs.emplace_back(freqs[i]);
      dec.powers.push_back(d[i]);
      rebuilt += d[i] * (atoms[i] * atoms[i].adjoint());
    }
  }
  dec.residual = (S.mat() - rebuilt).norm() / snorm;
  dec.success = dec.residual <= opts.residual_tol;
  return dec;
}

SpectralSupport fit_amplitudes(const ComplexSignal& y, const SamplingOperator& M,
                               const std::vector<Frequency>& freqs, bool* ill_conditioned) {
  if (ill_conditioned) *ill_conditioned = false;
  if (y.size() != M.rows())
    throw std::invalid_argument("fit_amplitudes: y length must equal rows(M)");
  const auto s = static_cast<Eigen::Index>(freqs.size());
  if (s == 0) return SpectralSupport();
  if (s > M.rows())
    throw std::invalid_argument("fit_amplitudes: more frequencies than measurements");
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = i + 1; j < s; ++j)
      if (wrap_distance(freqs[i], freqs[j]) == 0.0)
        throw std::invalid_argument("fit_amplitudes: duplicate frequency");

  Mat B(M.rows(), s);
  for (Eigen::Index i = 0; i < s; ++i) B.col(i) = compressed_atom(M, freqs[i].value());
  Eigen::JacobiSVD<Mat> svd(B, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smax = svd.singularValues()[0];
  const double smin = svd.singularValues()[svd.singularValues().size() - 1];
  if (ill_conditioned && (smin == 0.0 || smax / smin > 1e12)) *ill_conditioned = true;
  const Vec c = svd.solve(y.vec());

  const double cmax = c.cwiseAbs().maxCoeff();
  std::vector<SpectralSupport::Entry> entries;
  for (Eigen::Index i = 0; i < s; ++i)
    if (std::abs(c[i]) >= 1e-8 * cmax && std::abs(c[i]) > 0.0)
      entries.push_back({freqs[i], c[i]});
  return SpectralSupport(std::move(entries));
}

SupportError support_error(const SpectralSupport& est, const SpectralSupport& truth) {
  SupportError err;
  const auto& a = est.entries();
  const auto& b = truth.entries();
  std::vector<bool> ua(a.size(), false), ub(b.size(), false);
  const std::size_t pairs = std::min(a.size(), b.size());
  for (std::size_t p = 0; p < pairs; ++p) {
    double best = 2.0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (ua[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (ub[j]) continue;
        const double d = wrap_distance(a[i].freq, b[j].freq);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    ua[bi] = ub[bj] = true;
    err.matched_freq_err = std::max(err.matched_freq_err, best);
    err.amp_err = std::max(err.amp_err, std::abs(a[bi].amp - b[bj].amp));
  }
  err.unmatched = static_cast<int>(a.size() - pairs) + static_cast<int>(b.size() - pairs);
  return err;
}

}  // namespace spectral
