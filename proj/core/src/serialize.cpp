#include "spectral/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spectral {

Json to_json(const SpectralSupport& support) {
  Json entries = Json::array();
  for (const auto& e : support.entries())
    entries.push_back({{"f", e.freq.value()}, {"re", e.amp.real()}, {"im", e.amp.imag()}});
  return Json{{"entries", std::move(entries)}};
}

SpectralSupport support_from_json(const Json& j) {
  std::vector<SpectralSupport::Entry> entries;
  for (const auto& e : j.at("entries"))
    entries.push_back({Frequency(e.at("f").get<double>()),
                       Complex(e.at("re").get<double>(), e.at("im").get<double>())});
  return SpectralSupport(std::move(entries));
}

Json to_json(const ComplexSignal& signal) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < signal.size(); ++i) {
    re.push_back(signal.vec()[i].real());
    im.push_back(signal.vec()[i].imag());
  }
  return Json{{"n", signal.size()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexSignal signal_from_json(const Json& j) {
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (re.size() != im.size()) throw std::runtime_error("signal json: re/im length mismatch");
  Vec v(static_cast<Eigen::Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = Complex(re[i].get<double>(), im[i].get<double>());
  return ComplexSignal(std::move(v));
}

Json to_json(const SelectionPattern& pattern) {
  Json idx = Json::array();
  for (auto i : pattern.indices) idx.push_back(i);
  return Json{{"n", pattern.ambient}, {"indices", std::move(idx)}};
}

SelectionPattern pattern_from_json(const Json& j) {
  std::vector<Eigen::Index> idx;
  for (const auto& v : j.at("indices")) idx.push_back(v.get<Eigen::Index>());
  return SelectionPattern(std::move(idx), j.at("n").get<Eigen::Index>());
}

Json to_json(const MrssConfig& config) {
  Json samplers = Json::array();
  for (const auto& s : config.samplers)
    samplers.push_back({{"stride", s.stride}, {"delay", s.delay}, {"count", s.count}});
  return Json{{"grid", config.grid_size}, {"samplers", std::move(samplers)}};
}

MrssConfig mrss_from_json(const Json& j) {
  MrssConfig c;
  c.grid_size = j.at("grid").get<Eigen::Index>();
  for (const auto& s : j.at("samplers"))
    c.samplers.push_back({s.at("stride").get<Eigen::Index>(), s.at("delay").get<Eigen::Index>(),
                          s.at("count").get<Eigen::Index>()});
  return c;
}

Json to_json(const SolverParams& params) {
  return Json{{"rho", params.rho},           {"tol_abs", params.tol_abs},
              {"tol_rel", params.tol_rel},   {"max_iter", params.max_iter},
              {"rho_adapt", params.rho_adapt}, {"record_trace", params.record_trace}};
}

SolverParams solver_params_from_json(const Json& j) {
  SolverParams p;
  p.rho = j.value("rho", p.rho);
  p.tol_abs = j.value("tol_abs", p.tol_abs);
  p.tol_rel = j.value("tol_rel", p.tol_rel);
  p.max_iter = j.value("max_iter", p.max_iter);
  p.rho_adapt = j.value("rho_adapt", p.rho_adapt);
  p.record_trace = j.value("record_trace", p.record_trace);
  if (p.rho <= 0 || p.tol_abs <= 0 || p.tol_rel <= 0 || p.max_iter < 1)
    throw std::runtime_error("solver params: rho/tolerances must be positive, max_iter >= 1");
  return p;
}

Json to_json(const ValidityReport& report) {
  return Json{{"full_rank", report.full_rank},
              {"range_condition", report.range_condition},
              {"atom_norm_constant", report.atom_norm_constant},
              {"residual_norms", report.residual_norms}};
}

Json to_json(const CertificateReport& report) {
  return Json{{"range_ok", report.range_ok},
              {"interpolation_err", report.interpolation_err},
              {"off_support_max", report.off_support_max},
              {"passed", report.passed}};
}

Json to_json(const SupportError& err) {
  return Json{{"matched_freq_err", err.matched_freq_err},
              {"amp_err", err.amp_err},
              {"unmatched", err.unmatched}};
}

Json to_json(const Decomposition& dec) {
  Json freqs = Json::array(), powers = Json::array();
  for (const auto& f : dec.freqs) freqs.push_back(f.value());
  for (double p : dec.powers) powers.push_back(p);
  return Json{{"freqs", std::move(freqs)},   {"powers", std::move(powers)},
              {"rank", dec.rank},            {"residual", dec.residual},
              {"success", dec.success},      {"rank_saturated", dec.rank_saturated}};
}

namespace {
Json vec_to_json(const Vec& v) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v[i].real());
    im.push_back(v[i].imag());
  }
  return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}
}  // namespace

Json to_json(const FullSdpSolution& sol) {
  return Json{{"u", vec_to_json(sol.u)},
              {"t", sol.t},
              {"x", vec_to_json(sol.x)},
              {"objective", sol.objective},
              {"iters", sol.iters},
              {"converged", sol.converged},
              {"residuals", {{"primal", sol.residuals.primal}, {"dual", sol.residuals.dual}}},
              {"imag_drift", sol.imag_drift}};
}

Json to_json(const ReducedSdpSolution& sol) {
  return Json{{"v", vec_to_json(sol.v)},
              {"t", sol.t},
              {"objective", sol.objective},
              {"iters", sol.iters},
              {"converged", sol.converged},
              {"residuals", {{"primal", sol.residuals.primal}, {"dual", sol.residuals.dual}}},
              {"dual_vector", vec_to_json(sol.dual_vector)},
              {"imag_drift", sol.imag_drift}};
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string to_csv(const ComplexSignal& signal) {
  std::ostringstream os;
  os << "index,re,im\n";
  for (Eigen::Index i = 0; i < signal.size(); ++i)
    os << i << ',' << format_double(signal.vec()[i].real()) << ','
       << format_double(signal.vec()[i].imag()) << '\n';
  return os.str();
}

std::string to_csv(const std::vector<TracePoint>& trace) {
  std::ostringstream os;
  os << "iter,primal_res,dual_res,objective\n";
  for (const auto& t : trace)
    os << t.iter << ',' << format_double(t.primal_res) << ',' << format_double(t.dual_res)
       << ',' << format_double(t.objective) << '\n';
  return os.str();
}

std::string matrix_to_csv(const Mat& m) {
  std::ostringstream os;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) os << ',';
      os << format_double(m(r, c).real()) << ',' << format_double(m(r, c).imag());
    }
    os << '\n';
  }
  return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path.string());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

Json read_json_file(const std::filesystem::path& path) {
  return Json::parse(read_text_file(path));
}

}  // namespace spectral
