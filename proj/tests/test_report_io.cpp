#include <doctest.h>

#include <sstream>

#include "stokeswire/errors.hpp"
#include "stokeswire/report_io.hpp"

using namespace stokeswire;

TEST_CASE("empty config yields defaults") {
  std::stringstream in("");
  const ToolConfig config = parse_config(in);
  CHECK(config.tol_residual == 1e-10);
  CHECK(config.tol_identity == 1e-12);
  CHECK(config.threads == 1);
}

TEST_CASE("partial config keeps remaining defaults") {
  std::stringstream in("# comment\nseed = 42\n");
  const ToolConfig config = parse_config(in);
  CHECK(config.seed == 42);
  CHECK(config.tol_residual == 1e-10);
  CHECK(config.quad_bump == ToolConfig{}.quad_bump);
}

TEST_CASE("invalid values are rejected with line numbers") {
  {
    std::stringstream in("tol_residual = -1\n");
    CHECK_THROWS_AS(parse_config(in), ParseError);
  }
  {
    std::stringstream in("seed = 1\ntol_identity = 0\n");
    try {
      parse_config(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
  {
    std::stringstream in("threads = 0\n");
    CHECK_THROWS_AS(parse_config(in), ParseError);
  }
  {
    std::stringstream in("tol_residual = banana\n");
    CHECK_THROWS_AS(parse_config(in), ParseError);
  }
  {
    std::stringstream in("no_such_key = 3\n");
    CHECK_THROWS_AS(parse_config(in), UnknownKeyError);
  }
  {
    std::stringstream in("seed 42\n");
    CHECK_THROWS_AS(parse_config(in), ParseError);
  }
}

TEST_CASE("config round trip is stable") {
  std::stringstream in(
      "quad_bump = 3\nload_bump = 6\ntol_residual = 1e-09\n"
      "tol_identity = 1e-13\nseed = 7\nthreads = 2\n");
  const ToolConfig config = parse_config(in);
  std::stringstream first;
  emit_config(config, first);
  const ToolConfig reloaded = parse_config(first);
  std::stringstream second;
  emit_config(reloaded, second);
  std::stringstream first_again;
  emit_config(config, first_again);
  CHECK(second.str() == first_again.str());
  CHECK(reloaded.quad_bump == 3);
  CHECK(reloaded.tol_residual == 1e-9);
}

TEST_CASE("missing config file") {
  CHECK_THROWS_AS(load_config("/nonexistent/config.txt"), IoError);
}
