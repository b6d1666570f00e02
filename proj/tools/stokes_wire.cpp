// Benchmark and verification driver for the pressure-wired Stokes element.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "stokeswire/bench.hpp"
#include "stokeswire/errors.hpp"
#include "stokeswire/mesh.hpp"
#include "stokeswire/report_io.hpp"
#include "stokeswire/singularity.hpp"

namespace {

using namespace stokeswire;

int run(int argc, char** argv) {
  CLI::App app{"pressure-wired Stokes element benchmarks"};
  app.get_formatter()->column_width(34);

  std::string mode;
  app.add_option("mode", mode, "h | k | infsup | solve | verify")
      ->required()
      ->check(CLI::IsMember({"h", "k", "infsup", "infsup-scan", "solve", "verify"}));

  BenchConfig config;
  std::string eta_policy = "critical";
  std::string format = "csv";
  std::string config_path;
  std::string theta_dump;
  long seed = -1;
  int qbump = -1;

  app.add_option("--k", config.k, "velocity polynomial degree (start of the sweep in k mode)");
  app.add_option("--k-max", config.k_max, "last degree of the k sweep");
  app.add_option("--eps", config.eps_list, "criss-cross perturbations")
      ->delimiter(',');
  app.add_option("--eta-policy", eta_policy,
                 "critical | noncritical | value:<x>");
  app.add_option("--levels", config.levels, "refinement levels");
  app.add_option("--out", config.out_path, "report path (stdout when empty)");
  app.add_option("--format", format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--mesh", config.mesh_path, "mesh file replacing the generator");
  app.add_option("--config", config_path, "key-value config file");
  app.add_option("--seed", seed, "random seed override");
  app.add_option("--qbump", qbump, "quadrature degree bump override");
  app.add_option("--theta-dump", theta_dump,
                 "write the per-vertex singularity CSV of the base mesh");

  CLI11_PARSE(app, argc, argv);

  if (!config_path.empty()) config.tool = load_config(config_path);
  if (seed >= 0) config.tool.seed = static_cast<unsigned long>(seed);
  if (qbump >= 0) config.tool.quad_bump = qbump;
  config.format = (format == "json") ? ReportFormat::Json : ReportFormat::Csv;

  if (eta_policy == "critical") {
    config.eta_policy = EtaPolicy::Critical;
  } else if (eta_policy == "noncritical") {
    config.eta_policy = EtaPolicy::NonCritical;
  } else if (eta_policy.rfind("value:", 0) == 0) {
    config.eta_policy = EtaPolicy::Value;
    config.eta_value = std::stod(eta_policy.substr(6));
    if (config.eta_value < 0.0) throw OutOfRangeError("eta must be >= 0");
  } else {
    throw ParseError("unknown eta policy '" + eta_policy + "'");
  }

  if (!theta_dump.empty()) {
    const Mesh mesh = config.mesh_path.empty()
                          ? criss_cross_mesh(config.eps_list.at(0))
                          : read_mesh_file(config.mesh_path);
    std::ofstream out(theta_dump);
    if (!out) throw IoError("cannot open " + theta_dump);
    write_theta_csv(out, mesh);
  }

  if (mode == "verify") {
    const bool pass = run_verify_suite(config.tool.seed, std::cout);
    return pass ? 0 : 1;
  }

  RunReport report;
  if (mode == "h") {
    config.mode = BenchMode::H;
    report = run_h_benchmark(config);
  } else if (mode == "k") {
    config.mode = BenchMode::K;
    report = run_k_benchmark(config);
  } else if (mode == "infsup" || mode == "infsup-scan") {
    config.mode = BenchMode::InfSup;
    if (!app.count("--levels")) config.levels = 1;  // coarse scans by default
    report = run_infsup_scan(config);
  } else {  // solve
    config.mode = BenchMode::Solve;
    report = run_solve(config);
  }

  if (config.out_path.empty()) {
    emit_report(report, std::cout, config.format);
  } else {
    emit_report_file(report, config.out_path, config.format);
  }
  return report.any_errors() ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const stokeswire::Error& e) {
    std::cerr << "error|cli|" << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error|cli|" << e.what() << '\n';
    return 1;
  }
}
