#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

namespace stokeswire {

// Shared tool defaults. Loaded from a key-value text file; unknown keys are
// rejected, missing keys fall back to these defaults.
struct ToolConfig {
  int quad_bump = 2;          // added to the 2k assembly quadrature degree
  int load_bump = 10;         // extra degree for the non-polynomial load
  double tol_residual = 1e-10;
  double tol_identity = 1e-12;
  unsigned long seed = 2025;
  int threads = 1;
};

ToolConfig parse_config(std::istream& in);
ToolConfig load_config(const std::string& path);
void emit_config(const ToolConfig& config, std::ostream& out);

enum class LogLevel { Debug, Info, Warn, Error };

// "level|module|message" on standard error
void log_line(LogLevel level, std::string_view module, std::string_view message);

}  // namespace stokeswire
