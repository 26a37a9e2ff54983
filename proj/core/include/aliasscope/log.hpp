#pragma once

#include <string_view>

namespace aliasscope::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

// Level comes from the ALIAS_SCOPE_LOG environment variable
// (error|warn|info|debug), read once. Default: info.
Level level();

void write(Level lv, std::string_view msg);

inline void error(std::string_view msg) { write(Level::error, msg); }
inline void warn(std::string_view msg) { write(Level::warn, msg); }
inline void info(std::string_view msg) { write(Level::info, msg); }
inline void debug(std::string_view msg) { write(Level::debug, msg); }

}  // namespace aliasscope::log
