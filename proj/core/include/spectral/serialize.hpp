#ifndef SPECTRAL_SERIALIZE_HPP
#define SPECTRAL_SERIALIZE_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "spectral/certificate.hpp"
#include "spectral/recovery.hpp"
#include "spectral/sampling.hpp"
#include "spectral/solver.hpp"
#include "spectral/types.hpp"

namespace spectral {

using Json = nlohmann::json;

// JSON forms
//   SpectralSupport   {"entries":[{"f":0.1,"re":1.0,"im":0.0},...]}
//   ComplexSignal     {"n":64,"re":[...],"im":[...]}
//   SelectionPattern  {"n":64,"indices":[0,3,...]}
//   MrssConfig        {"grid":128,"samplers":[{"stride":2,"delay":0,"count":4},...]}
Json to_json(const SpectralSupport& support);
SpectralSupport support_from_json(const Json& j);

Json to_json(const ComplexSignal& signal);
ComplexSignal signal_from_json(const Json& j);

Json to_json(const SelectionPattern& pattern);
SelectionPattern pattern_from_json(const Json& j);

Json to_json(const MrssConfig& config);
MrssConfig mrss_from_json(const Json& j);

Json to_json(const SolverParams& params);
SolverParams solver_params_from_json(const Json& j);

Json to_json(const ValidityReport& report);
Json to_json(const CertificateReport& report);
Json to_json(const SupportError& err);
Json to_json(const Decomposition& dec);
Json to_json(const FullSdpSolution& sol);
Json to_json(const ReducedSdpSolution& sol);

// CSV forms
std::string to_csv(const ComplexSignal& signal);                 // index,re,im
std::string to_csv(const std::vector<TracePoint>& trace);        // iter,primal_res,dual_res,objective
std::string matrix_to_csv(const Mat& m);                         // row-major re/im pairs

// file helpers (throw std::runtime_error on I/O failure)
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);
Json read_json_file(const std::filesystem::path& path);

/// Shortest-round-trip double formatting shared by every CSV writer, so
/// reruns produce byte-identical files.
std::string format_double(double v);

}  // namespace spectral

#endif  // SPECTRAL_SERIALIZE_HPP
