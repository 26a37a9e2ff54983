#include "aliasscope/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace aliasscope::log {

static Level parse_level() {
  const char* env = std::getenv("ALIAS_SCOPE_LOG");
  if (!env) return Level::info;
  std::string v(env);
  if (v == "error") return Level::error;
  if (v == "warn") return Level::warn;
  if (v == "debug") return Level::debug;
  return Level::info;
}

Level level() {
  static const Level lv = parse_level();
  return lv;
}

void write(Level lv, std::string_view msg) {
  if (static_cast<int>(lv) > static_cast<int>(level())) return;
  static std::mutex mu;
  static const char* names[] = {"error", "warn", "info", "debug"};
  std::lock_guard<std::mutex> lock(mu);
  std::cerr << "[aliasscope:" << names[static_cast<int>(lv)] << "] " << msg << "\n";
}

}  // namespace aliasscope::log
