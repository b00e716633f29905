// spectral: gridless line spectral estimation from full or sub-sampled
// uniform measurements.
//
// Subcommands
//   generate    draw a ground-truth support and synthesize its signal
//   estimate    solve, decompose, fit amplitudes, optionally certify
//   experiment  seeded trial sweep comparing the full and reduced programs
//   bench       wall-clock sweep of full vs reduced solves over n
//
// Exit codes: 0 success, 2 validation failure, 3 solver non-convergence,
// 4 I/O error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "spectral/atoms.hpp"
#include "spectral/certificate.hpp"
#include "spectral/experiment.hpp"
#include "spectral/log.hpp"
#include "spectral/oracle.hpp"
#include "spectral/recovery.hpp"
#include "spectral/serialize.hpp"
#include "spectral/solver.hpp"

namespace fs = std::filesystem;
using namespace spectral;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitIo = 4;

struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConvergenceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SamplerSpec {
  std::string kind = "none";  // none | random | mrss | explicit
  Eigen::Index m = 0;
  std::uint64_t seed = 0;
  std::string pattern_file;
  std::string mrss_file;
};

SamplingOperator build_sampler(const SamplerSpec& spec, Eigen::Index n) {
  if (spec.kind == "none") return SamplingOperator::identity(n);
  if (spec.kind == "random") {
    if (spec.m < 1) throw ValidationFailure("estimate: --m required for the random sampler");
    return selection_matrix(random_subsample(n, spec.m, spec.seed, true));
  }
  if (spec.kind == "explicit") {
    if (spec.pattern_file.empty())
      throw ValidationFailure("estimate: --pattern required for the explicit sampler");
    SelectionPattern p = pattern_from_json(read_json_file(spec.pattern_file));
    if (p.ambient != n)
      throw ValidationFailure("estimate: pattern ambient dimension does not match the signal");
    return selection_matrix(p);
  }
  if (spec.kind == "mrss") {
    if (spec.mrss_file.empty())
      throw ValidationFailure("estimate: --mrss required for the mrss sampler");
    MrssConfig c = mrss_from_json(read_json_file(spec.mrss_file));
    if (c.grid_size != n)
      throw ValidationFailure("estimate: mrss grid does not match the signal length");
    return selection_matrix(mrss_pattern(c));
  }
  throw ValidationFailure("estimate: unknown sampler kind " + spec.kind);
}

int cmd_generate(Eigen::Index n, int s, double delta, std::uint64_t seed, const fs::path& out) {
  const SpectralSupport truth = random_support(s, delta, seed);
  const ComplexSignal x = synthesize_signal(truth, n);
  fs::create_directories(out);
  write_json_file(out / "truth.json", to_json(truth));
  write_json_file(out / "signal.json", to_json(x));
  log_info("generate: wrote " + (out / "signal.json").string() + " and truth.json");
  return kExitOk;
}

int cmd_estimate(const std::string& signal_file, const std::string& truth_file,
                 const SamplerSpec& sampler, bool reduced, bool certify, Eigen::Index grid,
                 const SolverParams& params, const fs::path& out, bool dump_trace,
                 bool dump_matrices) {
  const ComplexSignal x = signal_from_json(read_json_file(signal_file));
  const Eigen::Index n = x.size();
  const SamplingOperator M = build_sampler(sampler, n);
  const ComplexSignal y(M.matrix() * x.vec());
  fs::create_directories(out);

  Json report;
  report["n"] = n;
  report["m"] = M.rows();
  report["validity"] = to_json(M.validity());

  if (reduced && !M.validity().all()) {
    const auto& v = M.validity();
    std::string failed = !v.full_rank          ? "full_rank"
                         : !v.range_condition  ? "range_condition"
                                               : "atom_norm_constant";
    throw ValidationFailure("estimate: sampling operator failed the " + failed +
                            " check; the reduced program requires it");
  }
  if (reduced && M.pattern() && !difference_set_closed(*M.pattern()))
    log_info(
        "estimate: selection pattern is not difference-closed; the reduced objective may "
        "exceed the partial atomic norm");

  DenseHermitian S{Mat::Zero(M.rows(), M.rows())};
  double objective = 0.0;
  bool converged = false;
  std::optional<ReducedSdpSolution> reduced_sol;
  if (reduced || certify) {
    ReducedSdpSolution sol = solve_reduced_sdp(y, M, params);
    converged = sol.converged;
    objective = sol.objective;
    report["solver"] = to_json(sol);
    if (dump_trace) write_text_file(out / "trace.csv", to_csv(sol.trace));
    S = r_m_apply(M, sol.v);
    reduced_sol = std::move(sol);
  } else {
    const bool identity_like = M.rows() == n && M.pattern();
    FullSdpSolution sol = identity_like ? solve_full_sdp(y, params)
                                        : solve_full_sdp_constrained(y, M, params);
    converged = sol.converged;
    objective = sol.objective;
    report["solver"] = to_json(sol);
    if (dump_trace) write_text_file(out / "trace.csv", to_csv(sol.trace));
    S = DenseHermitian(detail::toeplitz_build_lenient(sol.u, nullptr));
  }

  if (dump_matrices) write_text_file(out / "psd_block.csv", matrix_to_csv(S.mat()));

  DecomposeOptions dopts;
  if (grid > 0) dopts.grid_size = grid;
  const SamplingOperator& dec_op =
      (reduced || certify) ? M : SamplingOperator::identity(n);
  const DenseHermitian* dec_S = &S;
  const Decomposition dec = decompose_partial_psd(*dec_S, dec_op, dopts);
  bool ill = false;
  const SpectralSupport est = fit_amplitudes(y, M, dec.freqs, &ill);
  report["decomposition"] = to_json(dec);
  report["objective"] = objective;
  report["converged"] = converged;
  report["ill_conditioned_fit"] = ill;

  if (!truth_file.empty()) {
    const SpectralSupport truth = support_from_json(read_json_file(truth_file));
    report["support_error"] = to_json(support_error(est, truth));
  }
  if (certify) {
    if (!reduced_sol || !reduced_sol->converged)
      throw ConvergenceFailure("estimate: cannot certify a non-converged solve");
    const DualCertificate cert = extract_dual_certificate(*reduced_sol, M, y);
    VerifyOptions vopts;
    if (grid >= 16 * n) vopts.grid_size = grid;
    report["certificate"] = to_json(verify_certificate(cert, M, est, vopts));
  }

  write_json_file(out / "estimate.json", to_json(est));
  write_json_file(out / "report.json", report);
  if (!converged)
    throw ConvergenceFailure("estimate: solver hit max_iter before the residual criteria");
  return kExitOk;
}

ExperimentConfig experiment_config_from_json(const Json& j) {
  ExperimentConfig c;
  c.n = j.at("n").get<Eigen::Index>();
  c.m = j.value("m", c.n);
  c.s = j.at("s").get<int>();
  c.delta_min = j.value("delta_min", 0.0);
  c.trials = j.value("trials", 1);
  c.seed = j.value("seed", std::uint64_t{0});
  c.success_freq_tol = j.value("success_freq_tol", 1e-3);
  c.certify = j.value("certify", false);
  const std::string sampler = j.value("sampler", "random");
  if (sampler == "random") {
    c.sampler = SamplerKind::kRandom;
  } else if (sampler == "mrss") {
    c.sampler = SamplerKind::kMrss;
    c.mrss = mrss_from_json(j.at("mrss"));
  } else if (sampler == "explicit") {
    c.sampler = SamplerKind::kExplicit;
    c.explicit_pattern = pattern_from_json(j.at("pattern"));
  } else {
    throw ValidationFailure("experiment: unknown sampler " + sampler);
  }
  if (j.contains("solver_params")) c.solver_params = solver_params_from_json(j["solver_params"]);
  if (c.delta_min < 0 || c.trials < 1 || c.s < 1 || c.m > c.n)
    throw ValidationFailure("experiment: config violates delta>=0, trials>=1, s>=1, m<=n");
  return c;
}

int cmd_experiment(const std::string& config_file, int jobs, const fs::path& out) {
  ExperimentConfig config = experiment_config_from_json(read_json_file(config_file));
  config.jobs = jobs;
  const ExperimentResult result = run_experiment(config);
  fs::create_directories(out);
  write_text_file(out / "results.csv", results_csv(result));
  write_text_file(out / "summary.json", summary_json(result));
  log_info("experiment: success rate " + std::to_string(result.success_rate()));
  return kExitOk;
}

int cmd_bench(const BenchConfig& config, const fs::path& out) {
  const auto rows = run_bench(config);
  fs::create_directories(out);
  write_text_file(out / "bench.csv", bench_csv(rows));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gridless line spectral estimation via atomic-norm semidefinite programs"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "draw a ground-truth support and its signal");
  Eigen::Index g_n = 64;
  int g_s = 3;
  double g_delta = 0.0;
  std::uint64_t g_seed = 0;
  std::string g_out = ".";
  gen->add_option("--n", g_n, "signal length")->required();
  gen->add_option("--s", g_s, "number of spectral spikes")->required();
  gen->add_option("--delta", g_delta, "minimum wrap separation of the support");
  gen->add_option("--seed", g_seed, "rng seed");
  gen->add_option("--out", g_out, "output directory");

  // estimate
  auto* est = app.add_subcommand("estimate", "recover a spectral support from measurements");
  std::string e_signal, e_truth, e_out = ".";
  SamplerSpec e_sampler;
  bool e_reduced = false, e_certify = false, e_trace = false, e_matrices = false;
  Eigen::Index e_grid = 0;
  SolverParams e_params;
  est->add_option("--signal", e_signal, "signal.json input")->required();
  est->add_option("--truth", e_truth, "truth.json for error reporting");
  est->add_option("--sampler", e_sampler.kind, "none|random|explicit|mrss");
  est->add_option("--m", e_sampler.m, "rows kept by the random sampler");
  est->add_option("--sampler-seed", e_sampler.seed, "random sampler seed");
  est->add_option("--pattern", e_sampler.pattern_file, "pattern.json for the explicit sampler");
  est->add_option("--mrss", e_sampler.mrss_file, "mrss.json for the mrss sampler");
  est->add_flag("--reduced", e_reduced, "solve the reduced (m+1)-dimensional program");
  est->add_flag("--certify", e_certify, "extract and verify a dual certificate");
  est->add_option("--grid", e_grid, "frequency grid size for decomposition/verification");
  est->add_option("--tol-abs", e_params.tol_abs, "solver absolute tolerance");
  est->add_option("--tol-rel", e_params.tol_rel, "solver relative tolerance");
  est->add_option("--max-iter", e_params.max_iter, "solver iteration cap");
  est->add_flag("--dump-trace", e_trace, "write per-iteration trace.csv");
  est->add_flag("--dump-matrices", e_matrices, "write psd_block.csv");
  est->add_option("--out", e_out, "output directory");

  // experiment
  auto* exp = app.add_subcommand("experiment", "seeded sweep comparing both programs");
  std::string x_config, x_out = ".";
  int x_jobs = 1;
  exp->add_option("--config", x_config, "ExperimentConfig json")->required();
  exp->add_option("--jobs", x_jobs, "concurrent trials");
  exp->add_option("--out", x_out, "output directory");

  // bench
  auto* ben = app.add_subcommand("bench", "wall-clock sweep of full vs reduced solves");
  BenchConfig b_config;
  std::string b_out = ".";
  ben->add_option("--n", b_config.n_values, "signal lengths (repeat or comma separated)")
      ->required()
      ->delimiter(',');
  ben->add_option("--c-const", b_config.c_const, "m = ceil(C log2(n)^2)");
  ben->add_option("--s", b_config.s, "spikes per instance");
  ben->add_option("--reps", b_config.reps, "repetitions per size");
  ben->add_option("--seed", b_config.seed, "rng seed");
  ben->add_option("--tol-abs", b_config.solver_params.tol_abs, "solver absolute tolerance");
  ben->add_option("--tol-rel", b_config.solver_params.tol_rel, "solver relative tolerance");
  ben->add_option("--max-iter", b_config.solver_params.max_iter, "solver iteration cap");
  ben->add_option("--out", b_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (gen->parsed()) return cmd_generate(g_n, g_s, g_delta, g_seed, g_out);
    if (est->parsed()) {
      if (e_sampler.kind == "none" && e_sampler.m > 0) e_sampler.kind = "random";
      e_params.record_trace = e_trace;
      return cmd_estimate(e_signal, e_truth, e_sampler, e_reduced, e_certify, e_grid, e_params,
                          e_out, e_trace, e_matrices);
    }
    if (exp->parsed()) return cmd_experiment(x_config, x_jobs, x_out);
    if (ben->parsed()) return cmd_bench(b_config, b_out);
  } catch (const ValidationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConvergenceFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
