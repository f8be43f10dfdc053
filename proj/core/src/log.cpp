#include "mgahhn/log.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace mgahhn::log {

namespace {

Level parse_env() {
  const char* env = std::getenv("MGAHHN_LOG");
  if (env == nullptr) return Level::kError;
  if (std::strcmp(env, "debug") == 0) return Level::kDebug;
  if (std::strcmp(env, "info") == 0) return Level::kInfo;
  return Level::kError;
}

std::atomic<Level>& level_slot() {
  static std::atomic<Level> slot{parse_env()};
  return slot;
}

const char* tag(Level lvl) {
  switch (lvl) {
    case Level::kError: return "error";
    case Level::kInfo: return "info";
    case Level::kDebug: return "debug";
  }
  return "?";
}

}  // namespace

Level level() { return level_slot().load(std::memory_order_relaxed); }

void set_level(Level lvl) { level_slot().store(lvl, std::memory_order_relaxed); }

bool enabled(Level lvl) { return static_cast<int>(lvl) <= static_cast<int>(level()); }

void write(Level lvl, const std::string& line) {
  if (!enabled(lvl)) return;
  std::fprintf(stderr, "[%s] %s\n", tag(lvl), line.c_str());
}

}  // namespace mgahhn::log
