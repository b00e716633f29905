#include "spectral/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "spectral/atoms.hpp"
#include "spectral/certificate.hpp"
#include "spectral/log.hpp"
#include "spectral/recovery.hpp"
#include "spectral/serialize.hpp"

namespace spectral {

namespace {

double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

SamplingOperator trial_operator(const ExperimentConfig& config, std::uint64_t pattern_seed) {
  switch (config.sampler) {
    case SamplerKind::kRandom:
      return selection_matrix(random_subsample(config.n, config.m, pattern_seed, true));
    case SamplerKind::kMrss:
      if (!config.mrss) throw std::invalid_argument("experiment: mrss sampler without config");
      return selection_matrix(mrss_pattern(*config.mrss));
    case SamplerKind::kExplicit:
      if (!config.explicit_pattern)
        throw std::invalid_argument("experiment: explicit sampler without pattern");
      return selection_matrix(*config.explicit_pattern);
  }
  throw std::logic_error("experiment: unknown sampler kind");
}

}  // namespace

SpectralSupport random_support(int s, double delta_min, std::uint64_t seed) {
  if (s < 1) throw std::invalid_argument("random_support: s must be positive");
  if (static_cast<double>(s) * delta_min > 1.0)
    throw std::invalid_argument(
        "random_support: infeasible separation, s*delta = " +
        std::to_string(s * delta_min) + " exceeds the torus circumference 1 (packing bound)");
  std::mt19937_64 eng(seed);
  constexpr int kMaxDraws = 100000;
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    std::vector<double> freqs(s);
    for (double& f : freqs) f = uniform01(eng);
    std::sort(freqs.begin(), freqs.end());
    double sep = 1.0;
    for (int i = 0; i < s; ++i) sep = std::min(sep, wrap_distance(freqs[(i + 1) % s], freqs[i]));
    if (s >= 2 && sep < delta_min) continue;
    std::vector<SpectralSupport::Entry> entries;
    for (double f : freqs) {
      const double phase = 2.0 * std::numbers::pi * uniform01(eng);
      entries.push_back({Frequency(f), std::polar(1.0, phase)});
    }
    return SpectralSupport(std::move(entries));
  }
  throw std::runtime_error("random_support: rejection sampling exhausted " +
                           std::to_string(kMaxDraws) + " draws (separation near packing bound)");
}

TrialResult run_trial(const ExperimentConfig& config, int trial_index) {
  TrialResult tr;
  tr.seed = config.seed + static_cast<std::uint64_t>(trial_index);
  const std::uint64_t support_seed = 2 * tr.seed;
  const std::uint64_t pattern_seed = 2 * tr.seed + 1;

  const SpectralSupport truth = random_support(config.s, config.delta_min, support_seed);
  const ComplexSignal x = synthesize_signal(truth, config.n);
  const SamplingOperator M = trial_operator(config, pattern_seed);
  const ComplexSignal y(M.matrix() * x.vec());

  auto t0 = std::chrono::steady_clock::now();
  const FullSdpSolution full = solve_full_sdp_constrained(y, M, config.solver_params);
  tr.wall_full_ms = elapsed_ms(t0);
  tr.full_converged = full.converged;
  tr.objective_full = full.objective;

  t0 = std::chrono::steady_clock::now();
  const ReducedSdpSolution reduced = solve_reduced_sdp(y, M, config.solver_params);
  tr.wall_reduced_ms = elapsed_ms(t0);
  tr.reduced_converged = reduced.converged;
  tr.objective_reduced = reduced.objective;

  tr.corollary_gap = (M.matrix() * full.u - reduced.v).norm();

  const Decomposition dec = decompose_partial_psd(r_m_apply(M, reduced.v), M);
  const SpectralSupport est = fit_amplitudes(y, M, dec.freqs);
  const SupportError err = support_error(est, truth);
  tr.freq_err = err.matched_freq_err;
  tr.unmatched = err.unmatched;
  tr.success = err.matched_freq_err <= config.success_freq_tol && err.unmatched == 0;

  if (config.certify && reduced.converged) {
    tr.certificate_checked = true;
    const DualCertificate cert = extract_dual_certificate(reduced, M, y);
    tr.certificate_passed = verify_certificate(cert, M, est).passed;
  }
  return tr;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  if (config.m > config.n) throw std::invalid_argument("experiment: m must not exceed n");
  ExperimentResult result;
  result.config = config;
  result.trials.resize(config.trials);

  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    for (int t = 0; t < config.trials; ++t) result.trials[t] = run_trial(config, t);
    return result;
  }
  std::atomic<int> next{0};
  auto worker = [&]() {
    while (true) {
      const int t = next.fetch_add(1);
      if (t >= config.trials) break;
      result.trials[t] = run_trial(config, t);
    }
  };
  std::vector<std::future<void>> pool;
  for (int w = 1; w < jobs; ++w) pool.push_back(std::async(std::launch::async, worker));
  worker();
  for (auto& f : pool) f.get();
  return result;
}

double ExperimentResult::success_rate() const {
  if (trials.empty()) return 0.0;
  int ok = 0;
  for (const auto& t : trials) ok += t.success ? 1 : 0;
  return static_cast<double>(ok) / static_cast<double>(trials.size());
}

double ExperimentResult::median_speedup() const {
  std::vector<double> ratios;
  for (const auto& t : trials)
    if (t.wall_reduced_ms > 0.0) ratios.push_back(t.wall_full_ms / t.wall_reduced_ms);
  if (ratios.empty()) return 0.0;
  std::sort(ratios.begin(), ratios.end());
  return ratios[ratios.size() / 2];
}

std::string results_csv(const ExperimentResult& result) {
  std::ostringstream os;
  os << "seed,n,m,s,delta,objective_full,objective_reduced,corollary_gap,freq_err,success,"
        "wall_full_ms,wall_reduced_ms\n";
  for (const auto& t : result.trials) {
    os << t.seed << ',' << result.config.n << ',' << result.config.m << ',' << result.config.s
       << ',' << format_double(result.config.delta_min) << ','
       << format_double(t.objective_full) << ',' << format_double(t.objective_reduced) << ','
       << format_double(t.corollary_gap) << ',' << format_double(t.freq_err) << ','
       << (t.success ? 1 : 0) << ',' << format_double(t.wall_full_ms) << ','
       << format_double(t.wall_reduced_ms) << '\n';
  }
  return os.str();
}

std::string summary_json(const ExperimentResult& result) {
  Json j{{"trials", result.trials.size()},
         {"success_rate", result.success_rate()},
         {"median_speedup", result.median_speedup()}};
  if (result.config.certify) {
    int checked = 0, passed = 0;
    for (const auto& t : result.trials) {
      checked += t.certificate_checked ? 1 : 0;
      passed += t.certificate_passed ? 1 : 0;
    }
    j["certificates_checked"] = checked;
    j["certificates_passed"] = passed;
  }
  return j.dump(2) + "\n";
}

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  std::vector<BenchRow> rows;
  for (Eigen::Index n : config.n_values) {
    if (n < 16) throw std::invalid_argument("bench: n must be at least 16");
    const double l2 = std::log2(static_cast<double>(n));
    Eigen::Index m = static_cast<Eigen::Index>(std::ceil(config.c_const * l2 * l2));
    m = std::clamp<Eigen::Index>(m, std::min<Eigen::Index>(4 * config.s, n), n);

    ExperimentConfig ec;
    ec.n = n;
    ec.m = m;
    ec.s = config.s;
    ec.delta_min = 4.0 / static_cast<double>(n - 1);
    ec.seed = config.seed;
    ec.solver_params = config.solver_params;

    std::vector<double> full_ms, reduced_ms;
    BenchRow row;
    row.n = n;
    row.m = m;
    for (int r = 0; r < config.reps; ++r) {
      const TrialResult t = run_trial(ec, r);
      full_ms.push_back(t.wall_full_ms);
      reduced_ms.push_back(t.wall_reduced_ms);
      if (r == 0) {
        row.objective_full = t.objective_full;
        row.objective_reduced = t.objective_reduced;
      }
    }
    std::sort(full_ms.begin(), full_ms.end());
    std::sort(reduced_ms.begin(), reduced_ms.end());
    row.median_full_ms = full_ms[full_ms.size() / 2];
    row.median_reduced_ms = reduced_ms[reduced_ms.size() / 2];
    row.speedup = row.median_reduced_ms > 0.0 ? row.median_full_ms / row.median_reduced_ms : 0.0;
    rows.push_back(row);
    log_info("bench n=" + std::to_string(n) + " m=" + std::to_string(m) +
             " full=" + std::to_string(row.median_full_ms) +
             "ms reduced=" + std::to_string(row.median_reduced_ms) + "ms");
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "n,m,median_full_ms,median_reduced_ms,speedup,objective_full,objective_reduced\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.m << ',' << format_double(r.median_full_ms) << ','
       << format_double(r.median_reduced_ms) << ',' << format_double(r.speedup) << ','
       << format_double(r.objective_full) << ',' << format_double(r.objective_reduced) << '\n';
  return os.str();
}

}  // namespace spectral
