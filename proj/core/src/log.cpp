#include "spectral/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>

namespace spectral {

namespace {

LogLevel level_from_env() {
  const char* env = std::getenv("SPECTRAL_ATOMS_LOG");
  if (!env) return LogLevel::kError;
  const std::string v(env);
  if (v == "debug") return LogLevel::kDebug;
  if (v == "info") return LogLevel::kInfo;
  return LogLevel::kError;
}

std::atomic<LogLevel> g_level{level_from_env()};

}  // namespace

LogLevel log_level() { return g_level.load(std::memory_order_relaxed); }

void set_log_level(LogLevel level) { g_level.store(level, std::memory_order_relaxed); }

void log(LogLevel level, const std::string& message) {
  if (static_cast<int>(level) > static_cast<int>(log_level())) return;
  const char* tag = level == LogLevel::kError ? "error" : level == LogLevel::kInfo ? "info" : "debug";
  std::cerr << "[spectral:" << tag << "] " << message << "\n";
}

}  // namespace spectral
