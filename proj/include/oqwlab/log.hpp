#pragma once

#include <string>

namespace oqwlab {

/// Verbosity comes from the OQWLAB_LOG environment variable:
/// quiet | warn (default) | info | debug.
enum class LogLevel { quiet = 0, warn = 1, info = 2, debug = 3 };

LogLevel log_level();

void log_warn(const std::string& message);
void log_info(const std::string& message);
void log_debug(const std::string& message);

}  // namespace oqwlab
