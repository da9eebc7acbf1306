#include "oqwlab/log.hpp"

#include <cstdlib>
#include <iostream>

namespace oqwlab {

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("OQWLAB_LOG");
        if (!env) return LogLevel::warn;
        const std::string value(env);
        if (value == "quiet") return LogLevel::quiet;
        if (value == "info") return LogLevel::info;
        if (value == "debug") return LogLevel::debug;
        return LogLevel::warn;
    }();
    return level;
}

namespace {
void emit(LogLevel at, const char* tag, const std::string& message) {
    if (log_level() >= at) {
        std::cerr << "[" << tag << "] " << message << "\n";
    }
}
}  // namespace

void log_warn(const std::string& message) { emit(LogLevel::warn, "warn", message); }
void log_info(const std::string& message) { emit(LogLevel::info, "info", message); }
void log_debug(const std::string& message) { emit(LogLevel::debug, "debug", message); }

}  // namespace oqwlab
