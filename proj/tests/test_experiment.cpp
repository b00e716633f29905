#include <doctest.h>

#include <sstream>

#include "spectral/atoms.hpp"
#include "spectral/experiment.hpp"
#include "spectral/serialize.hpp"
#include "test_util.hpp"

using namespace spectral;

TEST_SUITE_BEGIN("experiment");

namespace {

// trial sweep on an in-scope (difference-closed) explicit pattern
ExperimentConfig small_config() {
  ExperimentConfig c;
  c.n = 32;
  c.m = 16;
  c.s = 2;
  c.delta_min = 4.0 / 15.0;  // separation on the compressed scale
  c.trials = 3;
  c.seed = 5;
  c.sampler = SamplerKind::kExplicit;
  std::vector<Eigen::Index> idx(16);
  for (Eigen::Index i = 0; i < 16; ++i) idx[i] = i;
  c.explicit_pattern = SelectionPattern(idx, 32);
  return c;
}

std::string strip_wall_columns(const std::string& csv) {
  std::istringstream is(csv);
  std::ostringstream os;
  std::string line;
  while (std::getline(is, line)) {
    const std::size_t last = line.rfind(',');
    const std::size_t second = line.rfind(',', last - 1);
    os << line.substr(0, second) << '\n';
  }
  return os.str();
}

}  // namespace

TEST_CASE("random_support honors the separation and the packing bound") {
  const SpectralSupport s = random_support(3, 0.08, 42);
  CHECK(s.size() == 3);
  CHECK(min_separation(s) >= 0.08);
  for (const auto& e : s.entries()) CHECK(std::abs(e.amp) == doctest::Approx(1.0));

  // determinism
  const SpectralSupport s2 = random_support(3, 0.08, 42);
  CHECK(s2.entries()[0].freq.value() == s.entries()[0].freq.value());

  CHECK_THROWS_WITH_AS(random_support(20, 0.2, 1), doctest::Contains("packing"),
                       std::invalid_argument);
}

TEST_CASE("trial sweep recovers and fills every column") {
  const ExperimentConfig c = small_config();
  const ExperimentResult r = run_experiment(c);
  REQUIRE(r.trials.size() == 3);
  for (const auto& t : r.trials) {
    CHECK(t.full_converged);
    CHECK(t.reduced_converged);
    CHECK(t.success);
    CHECK(t.corollary_gap < 1e-2);
    CHECK(t.wall_full_ms > 0.0);
    CHECK(t.wall_reduced_ms > 0.0);
  }
  CHECK(r.success_rate() == 1.0);

  const std::string csv = results_csv(r);
  std::istringstream is(csv);
  std::string header;
  std::getline(is, header);
  CHECK(header ==
        "seed,n,m,s,delta,objective_full,objective_reduced,corollary_gap,freq_err,success,"
        "wall_full_ms,wall_reduced_ms");
  int rows = 0;
  for (std::string line; std::getline(is, line);) ++rows;
  CHECK(rows == 3);

  // summary success rate equals the csv-recomputed value
  const Json summary = Json::parse(summary_json(r));
  CHECK(summary["success_rate"].get<double>() == r.success_rate());
  CHECK(summary["trials"].get<int>() == 3);
}

TEST_CASE("mathematical columns are deterministic across reruns") {
  const ExperimentConfig c = small_config();
  const std::string a = strip_wall_columns(results_csv(run_experiment(c)));
  const std::string b = strip_wall_columns(results_csv(run_experiment(c)));
  CHECK(a == b);
}

TEST_CASE("concurrent trials produce the same rows as sequential") {
  ExperimentConfig c = small_config();
  const std::string seq = strip_wall_columns(results_csv(run_experiment(c)));
  c.jobs = 3;
  const std::string par = strip_wall_columns(results_csv(run_experiment(c)));
  CHECK(seq == par);
}

TEST_CASE("bench csv schema and m rule") {
  BenchConfig b;
  b.n_values = {16};
  b.reps = 1;
  b.s = 2;
  b.solver_params.tol_abs = 1e-5;
  b.solver_params.tol_rel = 1e-4;
  const auto rows = run_bench(b);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n == 16);
  CHECK(rows[0].m == 8);  // ceil(0.5 * log2(16)^2) = 8 >= 4s
  const std::string csv = bench_csv(rows);
  CHECK(csv.rfind("n,m,median_full_ms,median_reduced_ms,speedup,objective_full,"
                  "objective_reduced\n", 0) == 0);
}

TEST_SUITE_END();
