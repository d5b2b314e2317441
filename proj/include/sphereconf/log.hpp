#pragma once

#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace sphereconf {
namespace log {

enum class Level { quiet = 0, error = 1, warn = 2, info = 3, debug = 4 };

// Level comes from SPHERECONF_LOG (quiet|error|warn|info|debug), default warn.
inline Level level() {
    static const Level lv = [] {
        const char* env = std::getenv("SPHERECONF_LOG");
        if (env == nullptr) return Level::warn;
        if (std::strcmp(env, "quiet") == 0) return Level::quiet;
        if (std::strcmp(env, "error") == 0) return Level::error;
        if (std::strcmp(env, "warn") == 0) return Level::warn;
        if (std::strcmp(env, "info") == 0) return Level::info;
        if (std::strcmp(env, "debug") == 0) return Level::debug;
        return Level::warn;
    }();
    return lv;
}

inline void emit(Level lv, const char* tag, const char* fmt, std::va_list args) {
    if (static_cast<int>(lv) > static_cast<int>(level())) return;
    std::fprintf(stderr, "[sphereconf %s] ", tag);
    std::vfprintf(stderr, fmt, args);
    std::fputc('\n', stderr);
}

inline void error(const char* fmt, ...) {
    std::va_list args;
    va_start(args, fmt);
    emit(Level::error, "error", fmt, args);
    va_end(args);
}

inline void warn(const char* fmt, ...) {
    std::va_list args;
    va_start(args, fmt);
    emit(Level::warn, "warn", fmt, args);
    va_end(args);
}

inline void info(const char* fmt, ...) {
    std::va_list args;
    va_start(args, fmt);
    emit(Level::info, "info", fmt, args);
    va_end(args);
}

inline void debug(const char* fmt, ...) {
    std::va_list args;
    va_start(args, fmt);
    emit(Level::debug, "debug", fmt, args);
    va_end(args);
}

}  // namespace log
}  // namespace sphereconf
