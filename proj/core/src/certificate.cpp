#include "spectral/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "spectral/recovery.hpp"

namespace spectral {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex eval_poly(const Vec& q, double f) {
  Complex acc = 0.0;
  for (Eigen::Index j = 0; j < q.size(); ++j) {
    const double frac = std::fmod(f * static_cast<double>(j), 1.0);
    acc += q[j] * std::polar(1.0, kTwoPi * frac);
  }
  return acc;
}
}  // namespace

Complex dual_poly_eval(const DualCertificate& cert, Frequency f) {
  return eval_poly(cert.q, f.value());
}

DualCertificate extract_dual_certificate(const ReducedSdpSolution& sol,
                                         const SamplingOperator& M, const ComplexSignal& y) {
  if (!sol.converged)
    throw std::invalid_argument("extract_dual_certificate: solution did not converge");
  if (sol.dual_vector.size() != M.rows())
    throw std::invalid_argument("extract_dual_certificate: dual vector does not match M");
  DualCertificate cert;
  cert.source = DualCertificate::Source::kExtractedFromDual;
  Vec qm = -2.0 * sol.dual_vector;
  const double pairing = (qm.adjoint() * y.vec()).value().real();
  if (sol.objective <= 1e-12 || std::abs(pairing) <= 1e-12) {
    cert.q = Vec::Zero(M.cols());
    return cert;
  }
  qm *= sol.objective / pairing;  // strong duality normalization Re<qm,y> = objective
  cert.q = (M.matrix().adjoint() * qm).conjugate();
  return cert;
}

CertificateReport verify_certificate(const DualCertificate& cert, const SamplingOperator& M,
                                     const SpectralSupport& support,
                                     const VerifyOptions& opts) {
  const Eigen::Index n = M.cols();
  if (cert.q.size() != n)
    throw std::invalid_argument("verify_certificate: certificate length must equal cols(M)");
  const Eigen::Index grid =
      opts.grid_size > 0 ? opts.grid_size : std::max<Eigen::Index>(16 * n, 4096);
  if (grid < 16 * n)
    throw std::invalid_argument("verify_certificate: grid_size below the 16n minimum");
  const double guard =
      opts.guard >= 0.0 ? opts.guard : 1.0 / (4.0 * static_cast<double>(std::max<Eigen::Index>(n - 1, 1)));

  CertificateReport rep;

  const double qnorm = cert.q.norm();
  if (qnorm == 0.0) {
    rep.range_ok = true;
  } else {
    const Vec w = Mat(M.matrix().adjoint()).completeOrthogonalDecomposition().solve(cert.q);
    rep.range_ok = (M.matrix().adjoint() * w - cert.q).norm() <= 1e-8 * qnorm;
  }

  // interpolation of the conjugate unit signs; the z^j evaluation convention
  // pairs conjugate-linearly with the amplitudes
  for (const auto& e : support.entries()) {
    const Complex target = std::conj(e.amp / std::abs(e.amp));
    rep.interpolation_err =
        std::max(rep.interpolation_err, std::abs(eval_poly(cert.q, e.freq.value()) - target));
  }

  auto outside_guards = [&](double f) {
    for (const auto& e : support.entries())
      if (wrap_distance(f, e.freq.value()) <= guard) return false;
    return true;
  };
  auto modulus = [&](double f) { return std::abs(eval_poly(cert.q, f)); };

  std::vector<double> mod(grid);
  for (Eigen::Index i = 0; i < grid; ++i) mod[i] = modulus(static_cast<double>(i) / grid);

  const double step = 1.0 / static_cast<double>(grid);
  double off_max = 0.0;
  for (Eigen::Index i = 0; i < grid; ++i) {
    const double f = static_cast<double>(i) / grid;
    if (!outside_guards(f)) continue;
    off_max = std::max(off_max, mod[i]);
    const bool local_max =
        mod[i] >= mod[(i + grid - 1) % grid] && mod[i] >= mod[(i + 1) % grid];
    if (local_max) {
      const double fr = detail::refine_peak(modulus, f - step, f + step);
      if (outside_guards(Frequency(fr).value())) off_max = std::max(off_max, modulus(fr));
    }
  }
  rep.off_support_max = off_max;
  rep.passed = rep.range_ok && rep.interpolation_err <= opts.tol && rep.off_support_max < 1.0;
  return rep;
}

LocalizationResult localize_from_dual(const DualCertificate& cert, Eigen::Index grid_size,
                                      double tol) {
  LocalizationResult out;
  const Eigen::Index n = cert.q.size();
  if (n == 0 || cert.q.norm() == 0.0) return out;
  const Eigen::Index grid = std::max<Eigen::Index>(grid_size, 64);
  auto modulus = [&](double f) { return std::abs(eval_poly(cert.q, f)); };

  std::vector<double> mod(grid);
  Eigen::Index qualifying = 0;
  for (Eigen::Index i = 0; i < grid; ++i) {
    mod[i] = modulus(static_cast<double>(i) / grid);
    if (mod[i] >= 1.0 - tol) ++qualifying;
  }
  out.saturated = qualifying * 2 >= grid;

  const double step = 1.0 / static_cast<double>(grid);
  const double merge_sep = n > 1 ? 1.0 / (2.0 * static_cast<double>(n - 1)) : 0.5;
  struct Peak {
    double f;
    double val;
  };
  std::vector<Peak> peaks;
  for (Eigen::Index i = 0; i < grid; ++i) {
    if (mod[i] < mod[(i + grid - 1) % grid] || mod[i] < mod[(i + 1) % grid]) continue;
    const double f0 = static_cast<double>(i) / grid;
    const double fr = detail::refine_peak(modulus, f0 - step, f0 + step);
    const double val = modulus(fr);
    if (val < 1.0 - tol) continue;
    peaks.push_back({Frequency(fr).value(), val});
  }
  std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
    return a.val != b.val ? a.val > b.val : a.f < b.f;
  });
  if (out.saturated && !peaks.empty()) peaks.resize(1);  // degenerate: one representative
  std::vector<Peak> kept;
  for (const Peak& p : peaks) {
    bool clash = false;
    for (const Peak& q : kept)
      if (wrap_distance(p.f, q.f) < merge_sep) {
        clash = true;
        break;
      }
    if (!clash) kept.push_back(p);
  }
  std::sort(kept.begin(), kept.end(), [](const Peak& a, const Peak& b) { return a.f < b.f; });
  for (const Peak& p : kept) out.freqs.emplace_back(p.f);
  return out;
}

}  // namespace spectral
