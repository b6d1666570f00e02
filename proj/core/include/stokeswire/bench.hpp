#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stokeswire/mesh.hpp"
#include "stokeswire/report_io.hpp"

namespace stokeswire {

enum class BenchMode { H, K, InfSup, Solve, Verify };
enum class EtaPolicy { Critical, NonCritical, Value };
enum class ReportFormat { Csv, Json };

struct BenchConfig {
  BenchMode mode = BenchMode::H;
  int k = 4;
  int k_max = 8;  // upper end of the degree sweep
  std::vector<double> eps_list = {0.01};
  EtaPolicy eta_policy = EtaPolicy::Critical;
  double eta_value = 0.0;
  int levels = 4;
  std::string out_path;
  ReportFormat format = ReportFormat::Csv;
  std::string mesh_path;  // bypasses the built-in criss-cross generator
  ToolConfig tool;
};

struct RunRecord {
  std::string mode;
  int k = 0;
  double eps = 0.0;
  double eta = 0.0;
  int level = 0;
  int ndof_u = 0;
  int ndof_p = 0;  // after constraints
  double err_grad_u = 0.0;
  double err_p = 0.0;
  double err_total = 0.0;
  double div_norm = 0.0;
  std::optional<double> beta;
  double seconds = 0.0;
  std::string error;  // solver failure message, empty on success
};

struct RunReport {
  std::vector<RunRecord> records;

  bool any_errors() const;
};

// empirical order of convergence between consecutive red refinements
double eoc(double err_coarse, double err_fine);

RunReport run_h_benchmark(const BenchConfig& config);
RunReport run_k_benchmark(const BenchConfig& config);
RunReport run_infsup_scan(const BenchConfig& config);
RunReport run_solve(const BenchConfig& config);

// csv columns: mode,k,eps,eta,level,ndof_u,ndof_p,err_grad_u,err_p,err_total,div_norm,beta,seconds
void emit_report(const RunReport& report, std::ostream& out, ReportFormat format);
void emit_report_file(const RunReport& report, const std::string& path,
                      ReportFormat format);
RunReport load_report_json(std::istream& in);

// randomized checks of the standalone identities and inequalities; prints a
// pass/fail table with worst-case ratios
bool run_verify_suite(unsigned long seed, std::ostream& out);

// The vertex whose constraint membership distinguishes the wired and the
// classical variants: the one with the smallest positive singularity measure.
int most_critical_vertex(const Mesh& mesh);

}  // namespace stokeswire
