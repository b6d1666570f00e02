#include "stokeswire/report_io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <istream>
#include <ostream>
#include <sstream>

#include "stokeswire/errors.hpp"

namespace stokeswire {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ParseError("config line " + std::to_string(line) + ": " + what);
}

}  // namespace

ToolConfig parse_config(std::istream& in) {
  ToolConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty() || value.empty()) fail(lineno, "empty key or value");

    std::istringstream vs(value);
    auto read_double = [&](double& out) {
      if (!(vs >> out) || !(vs >> std::ws).eof() || !std::isfinite(out)) {
        fail(lineno, "invalid number '" + value + "'");
      }
    };
    auto read_long = [&](long& out) {
      if (!(vs >> out) || !(vs >> std::ws).eof()) {
        fail(lineno, "invalid integer '" + value + "'");
      }
    };

    if (key == "quad_bump") {
      long v;
      read_long(v);
      if (v < 0) fail(lineno, "quad_bump must be >= 0");
      config.quad_bump = static_cast<int>(v);
    } else if (key == "load_bump") {
      long v;
      read_long(v);
      if (v < 0) fail(lineno, "load_bump must be >= 0");
      config.load_bump = static_cast<int>(v);
    } else if (key == "tol_residual") {
      double v;
      read_double(v);
      if (v <= 0.0) fail(lineno, "tol_residual must be positive");
      config.tol_residual = v;
    } else if (key == "tol_identity") {
      double v;
      read_double(v);
      if (v <= 0.0) fail(lineno, "tol_identity must be positive");
      config.tol_identity = v;
    } else if (key == "seed") {
      long v;
      read_long(v);
      if (v < 0) fail(lineno, "seed must be >= 0");
      config.seed = static_cast<unsigned long>(v);
    } else if (key == "threads") {
      long v;
      read_long(v);
      if (v < 1) fail(lineno, "threads must be >= 1");
      config.threads = static_cast<int>(v);
    } else {
      throw UnknownKeyError("config line " + std::to_string(lineno) +
                            ": unknown key '" + key + "'");
    }
  }
  return config;
}

ToolConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  return parse_config(in);
}

void emit_config(const ToolConfig& config, std::ostream& out) {
  out.precision(17);
  out << "quad_bump = " << config.quad_bump << '\n'
      << "load_bump = " << config.load_bump << '\n'
      << "tol_residual = " << config.tol_residual << '\n'
      << "tol_identity = " << config.tol_identity << '\n'
      << "seed = " << config.seed << '\n'
      << "threads = " << config.threads << '\n';
}

void log_line(LogLevel level, std::string_view module, std::string_view message) {
  static const char* names[] = {"debug", "info", "warn", "error"};
  std::cerr << names[static_cast<int>(level)] << '|' << module << '|' << message
            << '\n';
}

}  // namespace stokeswire
