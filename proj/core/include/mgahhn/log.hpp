#pragma once

#include <string>

namespace mgahhn::log {

// Log level is read once from the MGAHHN_LOG environment variable
// (error | info | debug, default error) and can be overridden in-process.
enum class Level { kError = 0, kInfo = 1, kDebug = 2 };

Level level();
void set_level(Level lvl);
bool enabled(Level lvl);

void write(Level lvl, const std::string& line);

inline void error(const std::string& line) { write(Level::kError, line); }
inline void info(const std::string& line) { write(Level::kInfo, line); }
inline void debug(const std::string& line) { write(Level::kDebug, line); }

}  // namespace mgahhn::log
