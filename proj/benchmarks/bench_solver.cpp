#include <benchmark/benchmark.h>

#include <random>

#include "spectral/atoms.hpp"
#include "spectral/experiment.hpp"
#include "spectral/recovery.hpp"
#include "spectral/sampling.hpp"
#include "spectral/solver.hpp"

using namespace spectral;

namespace {

SolverParams bench_params() {
  SolverParams p;
  p.tol_abs = 1e-6;
  p.tol_rel = 1e-5;
  return p;
}

ComplexSignal bench_signal(Eigen::Index n, int s, std::uint64_t seed) {
  return synthesize_signal(random_support(s, 4.0 / static_cast<double>(n - 1), seed), n);
}

void BM_FullSdp(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const ComplexSignal x = bench_signal(n, 3, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_full_sdp(x, bench_params()));
  }
}

void BM_ReducedSdp(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const auto m = static_cast<Eigen::Index>(state.range(1));
  const SamplingOperator M = selection_matrix(random_subsample(n, m, 2, true));
  const ComplexSignal y(M.matrix() * bench_signal(n, 3, 1).vec());
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_reduced_sdp(y, M, bench_params()));
  }
}

void BM_PsdProject(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  Mat raw(n, n);
  std::mt19937_64 eng(3);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      raw(i, j) = Complex(static_cast<double>(eng() >> 11) * 0x1.0p-53 - 0.5,
                          static_cast<double>(eng() >> 11) * 0x1.0p-53 - 0.5);
  const DenseHermitian H(raw);
  for (auto _ : state) {
    benchmark::DoNotOptimize(psd_project(H));
  }
}

void BM_Decompose(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const SamplingOperator id = SamplingOperator::identity(n);
  const SpectralSupport sup = random_support(3, 4.0 / static_cast<double>(n - 1), 4);
  Mat S = Mat::Zero(n, n);
  for (const auto& e : sup.entries()) {
    const Vec b = atom_full(e.freq, 0.0, n).vec();
    S += std::norm(e.amp) * (b * b.adjoint());
  }
  const DenseHermitian Sh(S);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose_partial_psd(Sh, id));
  }
}

}  // namespace

BENCHMARK(BM_FullSdp)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReducedSdp)->Args({128, 16})->Args({256, 32})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PsdProject)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Decompose)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
