#ifndef SPECTRAL_EXPERIMENT_HPP
#define SPECTRAL_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spectral/sampling.hpp"
#include "spectral/solver.hpp"
#include "spectral/types.hpp"

namespace spectral {

enum class SamplerKind { kRandom, kMrss, kExplicit };

struct ExperimentConfig {
  Eigen::Index n = 64;
  Eigen::Index m = 24;
  int s = 3;
  double delta_min = 0.0;
  int trials = 1;
  std::uint64_t seed = 0;
  SamplerKind sampler = SamplerKind::kRandom;
  SolverParams solver_params;
  double success_freq_tol = 1e-3;
  int jobs = 1;
  bool certify = false;
  std::optional<MrssConfig> mrss;               // sampler == kMrss
  std::optional<SelectionPattern> explicit_pattern;  // sampler == kExplicit
};

struct TrialResult {
  std::uint64_t seed = 0;
  double objective_full = 0.0;
  double objective_reduced = 0.0;
  double corollary_gap = 0.0;  // ||M u_A - v_B||_2
  double freq_err = 0.0;
  int unmatched = 0;
  bool success = false;
  bool full_converged = false;
  bool reduced_converged = false;
  double wall_full_ms = 0.0;
  double wall_reduced_ms = 0.0;
  bool certificate_passed = false;
  bool certificate_checked = false;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialResult> trials;

  double success_rate() const;
  double median_speedup() const;  // median of wall_full / wall_reduced
};

/// s frequencies drawn uniformly with rejection until the minimum wrap
/// separation reaches delta_min, paired with unit-modulus uniform-phase
/// amplitudes. Throws when s*delta_min > 1 (packing bound) or after 1e5
/// rejected draws. Deterministic for a fixed seed.
SpectralSupport random_support(int s, double delta_min, std::uint64_t seed);

/// One seeded instance: synthesize, sample, solve both programs, recover from
/// the reduced solution, compare supports, optionally certify.
TrialResult run_trial(const ExperimentConfig& config, int trial_index);

/// All trials, optionally across a worker pool; results are returned in trial
/// order regardless of completion order.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// results.csv content. Wall-clock columns are measured and vary run to run;
/// every other column is deterministic for a fixed seed.
std::string results_csv(const ExperimentResult& result);
/// {"trials":N,"success_rate":...,"median_speedup":...}
std::string summary_json(const ExperimentResult& result);

struct BenchRow {
  Eigen::Index n = 0;
  Eigen::Index m = 0;
  double median_full_ms = 0.0;
  double median_reduced_ms = 0.0;
  double speedup = 0.0;
  double objective_full = 0.0;
  double objective_reduced = 0.0;
};

struct BenchConfig {
  std::vector<Eigen::Index> n_values;
  double c_const = 0.5;  // m = ceil(c * log2(n)^2), clamped to [4s, n]
  int s = 3;
  int reps = 3;
  std::uint64_t seed = 0;
  SolverParams solver_params;
};

std::vector<BenchRow> run_bench(const BenchConfig& config);
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace spectral

#endif  // SPECTRAL_EXPERIMENT_HPP
