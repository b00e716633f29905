#include <doctest.h>

#include <numbers>

#include "spectral/atoms.hpp"
#include "spectral/experiment.hpp"
#include "spectral/recovery.hpp"
#include "spectral/solver.hpp"
#include "test_util.hpp"

using namespace spectral;
namespace tt = spectral::testing;

namespace {

Mat atom_outer(const SamplingOperator& M, double f, double power) {
  const Vec b = atom_partial(Frequency(f), 0.0, M).vec();
  return power * (b * b.adjoint());
}

}  // namespace

TEST_SUITE_BEGIN("recovery");

TEST_CASE("rank-one decomposition") {
  const SamplingOperator M = selection_matrix(SelectionPattern({0, 1, 2, 3}, 8));
  const double m = 4.0;
  const DenseHermitian S(atom_outer(M, 0.3, m));
  const Decomposition dec = decompose_partial_psd(S, M);
  REQUIRE(dec.success);
  REQUIRE(dec.rank == 1);
  REQUIRE(dec.freqs.size() == 1);
  CHECK(wrap_distance(dec.freqs[0].value(), 0.3) < 1e-8);
  CHECK(dec.powers[0] == doctest::Approx(m).epsilon(1e-6));
  CHECK(dec.residual < 1e-8);
}

TEST_CASE("two-atom decomposition under identity sampling") {
  const SamplingOperator id = SamplingOperator::identity(8);
  const DenseHermitian S(atom_outer(id, 0.2, 1.0) + atom_outer(id, 0.6, 2.0));
  const Decomposition dec = decompose_partial_psd(S, id);
  REQUIRE(dec.success);
  REQUIRE(dec.freqs.size() == 2);
  CHECK(wrap_distance(dec.freqs[0].value(), 0.2) < 1e-6);
  CHECK(wrap_distance(dec.freqs[1].value(), 0.6) < 1e-6);
  CHECK(dec.powers[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(dec.powers[1] == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("zero matrix decomposes to nothing") {
  const SamplingOperator id = SamplingOperator::identity(4);
  const Decomposition dec = decompose_partial_psd(DenseHermitian(Mat::Zero(4, 4)), id);
  CHECK(dec.success);
  CHECK(dec.rank == 0);
  CHECK(dec.freqs.empty());
}

TEST_CASE("grid-separated constructive recovery is exact") {
  const SamplingOperator id = SamplingOperator::identity(12);
  DecomposeOptions opts;
  opts.grid_size = 4096;
  for (int k = 2; k <= 4; ++k) {
    Mat S = Mat::Zero(12, 12);
    std::vector<double> fs;
    for (int i = 0; i < k; ++i) {
      fs.push_back(static_cast<double>(i) / k + 0.013);
      S += atom_outer(id, fs.back(), 1.0 + i);
    }
    const Decomposition dec = decompose_partial_psd(DenseHermitian(S), id, opts);
    REQUIRE(dec.success);
    REQUIRE(static_cast<int>(dec.freqs.size()) == k);
    for (int i = 0; i < k; ++i) CHECK(wrap_distance(dec.freqs[i].value(), fs[i]) < 1e-7);
  }
}

TEST_CASE("round trip through the full program") {
  std::mt19937_64 eng(51);
  const Eigen::Index n = 64;
  const SpectralSupport truth = random_support(3, 4.0 / (n - 1), 7);
  const ComplexSignal x = synthesize_signal(truth, n);
  const FullSdpSolution sol = solve_full_sdp(x);
  REQUIRE(sol.converged);
  const SamplingOperator id = SamplingOperator::identity(n);
  const DenseHermitian S(detail::toeplitz_build_lenient(sol.u, nullptr));
  const Decomposition dec = decompose_partial_psd(S, id);
  const SpectralSupport est = fit_amplitudes(x, id, dec.freqs);
  const SupportError err = support_error(est, truth);
  CHECK(err.matched_freq_err <= 1e-3);
  CHECK(err.unmatched == 0);
}

TEST_CASE("round trip through the reduced program on an in-scope pattern") {
  const Eigen::Index n = 64, m = 32;
  // contiguous half: difference-closed, resolution scale m
  std::vector<Eigen::Index> idx(m);
  for (Eigen::Index i = 0; i < m; ++i) idx[i] = i;
  const SamplingOperator M = selection_matrix(SelectionPattern(idx, n));
  const SpectralSupport truth = random_support(3, 4.0 / (m - 1), 19);
  const ComplexSignal x = synthesize_signal(truth, n);
  const ComplexSignal y(M.matrix() * x.vec());
  const ReducedSdpSolution sol = solve_reduced_sdp(y, M);
  REQUIRE(sol.converged);
  const Decomposition dec = decompose_partial_psd(r_m_apply(M, sol.v), M);
  const SpectralSupport est = fit_amplitudes(y, M, dec.freqs);
  const SupportError err = support_error(est, truth);
  CHECK(err.matched_freq_err <= 1e-3);
  CHECK(err.unmatched == 0);
  // rebuilt residual stays within the advertised bound on success
  CHECK(dec.success);
  CHECK(dec.residual <= 1e-6);
}

TEST_CASE("fit_amplitudes") {
  const SamplingOperator M = selection_matrix(SelectionPattern({0, 1, 2, 4, 7}, 12));
  const Complex amp = 2.0 * std::polar(1.0, std::numbers::pi / 4);
  const ComplexSignal y(amp * atom_partial(Frequency(0.3), 0.0, M).vec());
  const SpectralSupport fit = fit_amplitudes(y, M, {Frequency(0.3)});
  REQUIRE(fit.size() == 1);
  CHECK(std::abs(fit.entries()[0].amp - amp) < 1e-10);

  CHECK(fit_amplitudes(ComplexSignal(Vec::Zero(5)), M, {Frequency(0.3)}).empty());

  // three-atom synthesis round trip at the true frequencies
  const SpectralSupport truth({{Frequency(0.1), Complex(1, 0)},
                               {Frequency(0.42), Complex(0, -2)},
                               {Frequency(0.8), Complex(0.5, 0.5)}});
  const SamplingOperator id = SamplingOperator::identity(16);
  const ComplexSignal x = synthesize_signal(truth, 16);
  std::vector<Frequency> fs;
  for (const auto& e : truth.entries()) fs.push_back(e.freq);
  const SpectralSupport refit = fit_amplitudes(x, id, fs);
  const SupportError err = support_error(refit, truth);
  CHECK(err.amp_err < 1e-8);
  CHECK(err.unmatched == 0);

  CHECK_THROWS_AS(fit_amplitudes(y, M, {Frequency(0.3), Frequency(0.3)}), std::invalid_argument);
  CHECK_THROWS_AS(
      fit_amplitudes(y, M,
                     {Frequency(0.1), Frequency(0.2), Frequency(0.3), Frequency(0.4),
                      Frequency(0.5), Frequency(0.6)}),
      std::invalid_argument);

  bool ill = false;
  fit_amplitudes(y, M, {Frequency(0.3), Frequency(0.3 + 1e-14)}, &ill);
  CHECK(ill);
}

TEST_CASE("support_error") {
  const SpectralSupport a({{Frequency(0.2), Complex(1, 0)}, {Frequency(0.6), Complex(0, 1)}});
  const SupportError same = support_error(a, a);
  CHECK(same.matched_freq_err == 0.0);
  CHECK(same.amp_err == 0.0);
  CHECK(same.unmatched == 0);

  const SupportError wrap = support_error(SpectralSupport({{Frequency(0.99), 1.0}}),
                                          SpectralSupport({{Frequency(0.01), 1.0}}));
  CHECK(wrap.matched_freq_err == doctest::Approx(0.02));
  CHECK(wrap.unmatched == 0);

  const SpectralSupport spurious({{Frequency(0.2), Complex(1, 0)},
                                  {Frequency(0.4), Complex(1, 0)},
                                  {Frequency(0.6), Complex(0, 1)}});
  CHECK(support_error(spurious, a).unmatched == 1);
}

TEST_SUITE_END();
