#ifndef SPECTRAL_LOG_HPP
#define SPECTRAL_LOG_HPP

#include <string>

namespace spectral {

enum class LogLevel { kError = 0, kInfo = 1, kDebug = 2 };

/// Current level, initialized once from SPECTRAL_ATOMS_LOG
/// (error | info | debug; default error).
LogLevel log_level();
void set_log_level(LogLevel level);

void log(LogLevel level, const std::string& message);

inline void log_error(const std::string& m) { log(LogLevel::kError, m); }
inline void log_info(const std::string& m) { log(LogLevel::kInfo, m); }
inline void log_debug(const std::string& m) { log(LogLevel::kDebug, m); }

}  // namespace spectral

#endif  // SPECTRAL_LOG_HPP
