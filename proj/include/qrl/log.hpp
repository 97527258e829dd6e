#pragma once

#include <string>

namespace qrl {

// Diagnostic output on stderr, gated by the QRL_LOG environment variable
// (error, info, debug; default error).  Reports on stdout stay clean.
enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

LogLevel log_level();
void log_info(const std::string& message);
void log_debug(const std::string& message);

}  // namespace qrl
