#include "stokeswire/bench.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "stokeswire/assembly.hpp"
#include "stokeswire/errors.hpp"
#include "stokeswire/manufactured.hpp"
#include "stokeswire/polynomials.hpp"
#include "stokeswire/singularity.hpp"
#include "stokeswire/solve.hpp"
#include "stokeswire/spaces.hpp"
#include "stokeswire/verify.hpp"

namespace stokeswire {

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

Mesh base_mesh(const BenchConfig& config, double eps) {
  if (!config.mesh_path.empty()) return read_mesh_file(config.mesh_path);
  return criss_cross_mesh(eps);
}

// critical set for the requested policy plus the recorded effective eta
std::pair<std::vector<int>, double> policy_critical_set(const Mesh& mesh,
                                                        const BenchConfig& config,
                                                        int special_vertex) {
  switch (config.eta_policy) {
    case EtaPolicy::Value: {
      return {eta_critical_set(mesh, config.eta_value), config.eta_value};
    }
    case EtaPolicy::NonCritical: {
      return {eta_critical_set(mesh, 0.0), 0.0};
    }
    case EtaPolicy::Critical: {
      std::vector<int> critical = eta_critical_set(mesh, 0.0);
      double eta = 0.0;
      if (special_vertex >= 0) {
        critical.push_back(special_vertex);
        std::sort(critical.begin(), critical.end());
        critical.erase(std::unique(critical.begin(), critical.end()),
                       critical.end());
        eta = theta_of_vertex(vertex_patch(mesh, special_vertex));
      }
      return {critical, eta};
    }
  }
  return {{}, 0.0};
}

struct SolveOutcome {
  double err_grad_u = std::nan("");
  double err_p = std::nan("");
  double div_norm = std::nan("");
  int ndof_u = 0;
  int ndof_p = 0;
  std::string error;
};

SolveOutcome solve_point(const Mesh& mesh, int k, const BenchConfig& config,
                         const std::vector<int>& critical,
                         const ManufacturedSolution& exact) {
  SolveOutcome out;
  const VelocityDofMap vmap = build_velocity_space(mesh, k);
  const PressureDofMap pmap = build_pressure_space(mesh, k);
  const ConstraintSet constraints =
      build_constraints_for_vertices(mesh, pmap, critical);
  out.ndof_u = vmap.n_free_dofs();
  out.ndof_p = pressure_subspace_dim(constraints, pmap);

  const QuadratureRule rule = gauss_triangle(2 * k + config.tool.quad_bump);
  const QuadratureRule fine_rule =
      gauss_triangle(2 * k + config.tool.quad_bump + config.tool.load_bump);
  try {
    const SaddleSystem sys = build_saddle_system(
        mesh, vmap, pmap, constraints,
        [&](Point2 x) { return exact.force(x); }, rule, fine_rule);
    const DiscreteSolution sol = solve_stokes(sys);
    const Eigen::VectorXd u_full = expand_velocity(sol.u, vmap);
    const ReferenceBasis vbasis(k);
    const auto [eg, ep] = error_norms(
        mesh, vmap, pmap, u_full, sol.p,
        [&](Point2 x) { return exact.velocity_gradient(x); },
        [&](Point2 x) { return exact.pressure(x); }, fine_rule);
    out.err_grad_u = eg;
    out.err_p = ep;
    out.div_norm = divergence_norm(mesh, vmap, vbasis, u_full, rule);
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

RunRecord make_record(const std::string& mode, int k, double eps, double eta,
                      int level, const SolveOutcome& out, double seconds) {
  RunRecord rec;
  rec.mode = mode;
  rec.k = k;
  rec.eps = eps;
  rec.eta = eta;
  rec.level = level;
  rec.ndof_u = out.ndof_u;
  rec.ndof_p = out.ndof_p;
  rec.err_grad_u = out.err_grad_u;
  rec.err_p = out.err_p;
  rec.err_total = out.err_grad_u + out.err_p;
  rec.div_norm = out.div_norm;
  rec.seconds = seconds;
  rec.error = out.error;
  return rec;
}

}  // namespace

bool RunReport::any_errors() const {
  return std::any_of(records.begin(), records.end(),
                     [](const RunRecord& r) { return !r.error.empty(); });
}

double eoc(double err_coarse, double err_fine) {
  return std::log(err_coarse / err_fine) / std::log(2.0);
}

int most_critical_vertex(const Mesh& mesh) {
  int best = -1;
  double best_theta = 2.0;
  for (int z = 0; z < mesh.n_vertices(); ++z) {
    const double theta = theta_of_vertex(vertex_patch(mesh, z));
    if (theta > 0.0 && theta < best_theta) {
      best_theta = theta;
      best = z;
    }
  }
  return best;
}

RunReport run_h_benchmark(const BenchConfig& config) {
  RunReport report;
  const ManufacturedSolution exact;
  for (double eps : config.eps_list) {
    Mesh mesh = base_mesh(config, eps);
    const int special = most_critical_vertex(mesh);  // ids survive refinement
    for (int level = 0; level < config.levels; ++level) {
      if (level > 0) mesh = red_refine(mesh);
      const double t0 = now_seconds();
      const auto [critical, eta] = policy_critical_set(mesh, config, special);
      const SolveOutcome out = solve_point(mesh, config.k, config, critical, exact);
      report.records.push_back(make_record("h", config.k, eps, eta, level, out,
                                           now_seconds() - t0));
      if (!out.error.empty()) {
        log_line(LogLevel::Warn, "bench",
                 "solver error at eps=" + std::to_string(eps) + " level=" +
                     std::to_string(level) + ": " + out.error);
      }
    }
  }
  return report;
}

RunReport run_k_benchmark(const BenchConfig& config) {
  RunReport report;
  const ManufacturedSolution exact;
  for (double eps : config.eps_list) {
    const Mesh mesh = base_mesh(config, eps);
    const int special = most_critical_vertex(mesh);
    for (int k = config.k; k <= config.k_max; ++k) {
      const double t0 = now_seconds();
      const auto [critical, eta] = policy_critical_set(mesh, config, special);
      const SolveOutcome out = solve_point(mesh, k, config, critical, exact);
      report.records.push_back(
          make_record("k", k, eps, eta, 0, out, now_seconds() - t0));
    }
  }
  return report;
}

RunReport run_infsup_scan(const BenchConfig& config) {
  RunReport report;
  for (double eps : config.eps_list) {
    Mesh mesh = base_mesh(config, eps);
    for (int r = 0; r < config.levels; ++r) mesh = red_refine(mesh);
    const double t0 = now_seconds();
    const int special = most_critical_vertex(mesh);
    const auto [critical, eta] = policy_critical_set(mesh, config, special);

    RunRecord rec;
    rec.mode = "infsup";
    rec.k = config.k;
    rec.eps = eps;
    rec.eta = eta;
    rec.level = config.levels;
    rec.err_grad_u = rec.err_p = rec.err_total = rec.div_norm = std::nan("");
    try {
      const VelocityDofMap vmap = build_velocity_space(mesh, config.k);
      const PressureDofMap pmap = build_pressure_space(mesh, config.k);
      const ConstraintSet constraints =
          build_constraints_for_vertices(mesh, pmap, critical);
      const QuadratureRule rule =
          gauss_triangle(2 * config.k + config.tool.quad_bump);
      const SaddleSystem sys = build_saddle_system(
          mesh, vmap, pmap, constraints,
          [](Point2) { return std::array<double, 2>{0.0, 0.0}; }, rule, rule);
      const InfSupEstimate est = estimate_infsup(sys);
      rec.beta = est.beta;
      rec.ndof_u = est.n_velocity;
      rec.ndof_p = est.n_pressure;
    } catch (const Error& e) {
      rec.error = e.what();
    }
    rec.seconds = now_seconds() - t0;
    report.records.push_back(rec);
  }
  return report;
}

RunReport run_solve(const BenchConfig& config) {
  RunReport report;
  const ManufacturedSolution exact;
  for (double eps : config.eps_list) {
    Mesh mesh = base_mesh(config, eps);
    for (int r = 0; r + 1 < config.levels; ++r) mesh = red_refine(mesh);
    const double t0 = now_seconds();
    const int special = most_critical_vertex(mesh);
    const auto [critical, eta] = policy_critical_set(mesh, config, special);
    const SolveOutcome out = solve_point(mesh, config.k, config, critical, exact);
    report.records.push_back(make_record("solve", config.k, eps, eta,
                                         config.levels - 1, out,
                                         now_seconds() - t0));
  }
  return report;
}

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void emit_report(const RunReport& report, std::ostream& out, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    out << "mode,k,eps,eta,level,ndof_u,ndof_p,err_grad_u,err_p,err_total,"
           "div_norm,beta,seconds\n";
    for (const RunRecord& r : report.records) {
      out << r.mode << ',' << r.k << ',' << format_double(r.eps) << ','
          << format_double(r.eta) << ',' << r.level << ',' << r.ndof_u << ','
          << r.ndof_p << ',' << format_double(r.err_grad_u) << ','
          << format_double(r.err_p) << ',' << format_double(r.err_total) << ','
          << format_double(r.div_norm) << ','
          << (r.beta ? format_double(*r.beta) : std::string()) << ','
          << format_double(r.seconds) << '\n';
    }
    return;
  }
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const RunRecord& r : report.records) {
    nlohmann::ordered_json rec;
    rec["mode"] = r.mode;
    rec["k"] = r.k;
    rec["eps"] = r.eps;
    rec["eta"] = r.eta;
    rec["level"] = r.level;
    rec["ndof_u"] = r.ndof_u;
    rec["ndof_p"] = r.ndof_p;
    rec["err_grad_u"] = r.err_grad_u;
    rec["err_p"] = r.err_p;
    rec["err_total"] = r.err_total;
    rec["div_norm"] = r.div_norm;
    if (r.beta) {
      rec["beta"] = *r.beta;
    } else {
      rec["beta"] = nullptr;
    }
    rec["seconds"] = r.seconds;
    rec["error"] = r.error;
    doc.push_back(std::move(rec));
  }
  out << doc.dump(2) << '\n';
}

void emit_report_file(const RunReport& report, const std::string& path,
                      ReportFormat format) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open report file " + path);
  emit_report(report, out, format);
  if (!out) throw IoError("failed writing report file " + path);
}

RunReport load_report_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report JSON: ") + e.what());
  }
  RunReport report;
  for (const auto& rec : doc) {
    RunRecord r;
    r.mode = rec.at("mode").get<std::string>();
    r.k = rec.at("k").get<int>();
    r.eps = rec.at("eps").is_null() ? std::nan("") : rec.at("eps").get<double>();
    r.eta = rec.at("eta").is_null() ? std::nan("") : rec.at("eta").get<double>();
    r.level = rec.at("level").get<int>();
    r.ndof_u = rec.at("ndof_u").get<int>();
    r.ndof_p = rec.at("ndof_p").get<int>();
    auto num = [&](const char* key) {
      return rec.at(key).is_null() ? std::nan("") : rec.at(key).get<double>();
    };
    r.err_grad_u = num("err_grad_u");
    r.err_p = num("err_p");
    r.err_total = num("err_total");
    r.div_norm = num("div_norm");
    if (!rec.at("beta").is_null()) r.beta = rec.at("beta").get<double>();
    r.seconds = num("seconds");
    r.error = rec.at("error").get<std::string>();
    report.records.push_back(std::move(r));
  }
  return report;
}

bool run_verify_suite(unsigned long seed, std::ostream& out) {
  std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
  bool all_pass = true;
  auto row = [&](const char* name, bool pass, double worst, const char* what) {
    all_pass = all_pass && pass;
    out << (pass ? "pass" : "FAIL") << "  " << name << "  worst " << what
        << " = " << worst << '\n';
  };

  {
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      worst = std::max(worst,
                       check_rotation_identity(angle(rng), angle(rng), angle(rng)));
    }
    row("rotation identity", worst <= 1e-12, worst, "deviation");
  }
  {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    double worst = 0.0;
    int tested = 0;
    while (tested < 1000) {
      const double theta = angle(rng);
      if (std::abs(std::sin(theta)) < 1e-3) continue;
      ++tested;
      const auto [cond, bound] = check_cond_bound(theta);
      worst = std::max(worst, cond / bound);
    }
    row("condition bound", worst <= 1.0 + 1e-12, worst, "cond/bound");
  }
  {
    std::uniform_real_distribution<double> mag(0.0, 1.0);
    double worst = 0.0;
    bool ok = true;
    for (int i = 0; i < 500; ++i) {
      const double perturb = 0.6 * mag(rng);
      const FourDirectionPatch patch = make_compatible_patch(rng, perturb);
      const auto [lhs, rhs] = check_four_direction_inequality(patch);
      if (rhs > 0.0) worst = std::max(worst, lhs / rhs);
      ok = ok && lhs <= rhs * (1.0 + 1e-9) + 1e-13;
    }
    row("four-direction inequality", ok, worst, "lhs/rhs");
  }
  {
    // exactly perpendicular cross: the alternating divergence sum vanishes
    const FourDirectionPatch patch = make_compatible_patch(rng, 0.0);
    const auto [lhs, rhs] = check_four_direction_inequality(patch);
    (void)rhs;
    row("four-direction equality case", lhs <= 1e-12, lhs, "lhs");
  }
  {
    const Mesh coarse = criss_cross_mesh(0.17);
    const Mesh fine = red_refine(coarse);
    std::vector<VertexPatch> patches;
    patches.push_back(vertex_patch(coarse, 4));
    for (int z = 0; z < fine.n_vertices(); ++z) {
      if (!fine.boundary_vertex[z] && vertex_patch(fine, z).size() == 6) {
        patches.push_back(vertex_patch(fine, z));
        break;
      }
    }
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    double worst = 0.0;
    bool ok = true;
    for (int i = 0; i < 1000; ++i) {
      const VertexPatch& patch = patches[i % patches.size()];
      const int n = patch.size();
      std::vector<double> traces(n);
      for (int j = 0; j < n - 1; ++j) traces[j] = value(rng);
      // close the alternating condition with the last trace
      double partial = 0.0;
      for (int j = 0; j < n - 1; ++j) {
        partial += (j % 2 == 0 ? -1.0 : 1.0) * traces[j];
      }
      traces[n - 1] = (n % 2 == 0 ? -1.0 : 1.0) * partial;
      const std::vector<Point2> d = solve_patch_compatibility(patch, traces, true);
      double residual = 0.0;
      for (int j = 0; j < n; ++j) {
        const int next = (j + 1) % n;
        const Point2 nn{patch.ray_dirs[next].y, -patch.ray_dirs[next].x};
        const Point2 nj{patch.ray_dirs[j].y, -patch.ray_dirs[j].x};
        const double rhs = dot(d[j], nn) - dot(d[next], nj);
        residual = std::max(residual, std::abs(traces[j] * patch.sin_angle[j] - rhs));
      }
      worst = std::max(worst, residual);
      ok = ok && residual <= 1e-12;
    }
    row("patch compatibility construction", ok, worst, "residual");
  }
  {
    // discrete alternating-divergence bound at a nearly singular vertex
    const Mesh mesh = criss_cross_mesh(1e-6);
    const int k = 4;
    const VelocityDofMap vmap = build_velocity_space(mesh, k);
    const ReferenceBasis basis(k);
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    double worst = 0.0;
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
      Eigen::VectorXd u = Eigen::VectorXd::Zero(vmap.n_dofs());
      for (int n = 0; n < vmap.n_nodes; ++n) {
        if (vmap.free_of_node[n] < 0) continue;
        u[vmap.dof(n, 0)] = value(rng);
        u[vmap.dof(n, 1)] = value(rng);
      }
      const auto [lhs, rhs] =
          check_patch_divergence_corollary(mesh, vmap, basis, u, 4, 1e-5);
      if (rhs > 0.0) worst = std::max(worst, lhs / rhs);
      ok = ok && lhs <= rhs;
    }
    row("alternating divergence bound", ok, worst, "lhs/rhs");
  }
  return all_pass;
}

}  // namespace stokeswire
