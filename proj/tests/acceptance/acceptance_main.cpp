// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Runs the full solver pipeline at desk scale.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "stokeswire/assembly.hpp"
#include "stokeswire/bench.hpp"
#include "stokeswire/errors.hpp"
#include "stokeswire/manufactured.hpp"
#include "stokeswire/mesh.hpp"
#include "stokeswire/polynomials.hpp"
#include "stokeswire/singularity.hpp"
#include "stokeswire/solve.hpp"
#include "stokeswire/spaces.hpp"
#include "stokeswire/verify.hpp"

using namespace stokeswire;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass,
            const std::string& detail, double seconds) {
  if (!pass) ++failures;
  std::printf("%s  criterion %d: %s  [%s]  (%.1fs)\n", pass ? "PASS" : "FAIL",
              number, name.c_str(), detail.c_str(), seconds);
  std::fflush(stdout);
}

double now() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

// --- criterion 1: singularity measure of the perturbed criss-cross --------

void criterion_1() {
  const double t0 = now();
  bool pass = true;
  std::ostringstream detail;
  for (double eps : {1e-2, 1e-4, 1e-6, 1e-8}) {
    const Mesh mesh = criss_cross_mesh(eps);
    const double theta = theta_of_vertex(vertex_patch(mesh, 4));
    const double rel = std::abs(theta - 2.0 * eps) / (2.0 * eps);
    pass = pass && rel <= 0.05;
    detail << fmt("eps=%.0e rel=%.1e ", eps, rel);
  }
  report(1, "singularity measure ~ 2*eps", pass, detail.str(), now() - t0);
}

// --- criterion 2: patch bubble identity suite ------------------------------

stokeswire::Mesh random_fan(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> gap_dist(0.7, 1.3);
  std::uniform_real_distribution<double> radius_dist(0.6, 1.4);
  std::vector<double> gaps(n);
  double total = 0.0;
  for (double& g : gaps) total += (g = gap_dist(rng));
  std::vector<Point2> v{{0.0, 0.0}};
  double phi = gap_dist(rng);
  for (int i = 0; i < n; ++i) {
    const double r = radius_dist(rng);
    v.push_back({r * std::cos(phi), r * std::sin(phi)});
    phi += gaps[i] * (2.0 * std::numbers::pi / total);
  }
  std::vector<std::array<int, 3>> tris;
  for (int i = 0; i < n; ++i) tris.push_back({0, 1 + i, 1 + (i + 1) % n});
  return build_mesh(std::move(v), std::move(tris));
}

void criterion_2() {
  const double t0 = now();
  std::mt19937 rng(2025);
  std::uniform_real_distribution<double> value(-2.0, 2.0);
  double worst_identity = 0.0, worst_gram = 0.0;
  bool pass = true;

  for (int k = 2; k <= 8; ++k) {
    const ReferenceBasis poly(k);
    const QuadratureRule rule = gauss_triangle(2 * k);
    std::vector<double> basis_values(poly.size());
    for (int rep = 0; rep < 50; ++rep) {
      const Mesh fan = random_fan(rng, 3 + rep % 6);
      const VertexPatch patch = vertex_patch(fan, 0);
      const int pos = rep % patch.size();
      const int t = patch.triangles[pos];
      const double area = fan.area(t);
      const double sign = (pos % 2 == 0) ? -1.0 : 1.0;
      const int lz = fan.local_vertex(t, 0);

      // vertex values: (-1)^j |K|^{-1} (-1)^k zeta_k at the center, else
      // (-1)^j |K|^{-1}
      for (int lv = 0; lv < 3; ++lv) {
        std::array<double, 3> bary{0, 0, 0};
        bary[lv] = 1.0;
        const double got = eval_patch_bubble(patch, fan, k, t, bary);
        const double want =
            sign / area * (lv == lz ? (k % 2 == 0 ? 1.0 : -1.0) * zeta(k) : 1.0);
        const double rel = std::abs(got - want) / std::abs(want);
        worst_identity = std::max(worst_identity, rel);
      }

      // moment: (b, 1) over the triangle equals (-1)^{j+k} / zeta_k
      double moment = 0.0;
      for (int q = 0; q < rule.size(); ++q) {
        moment += 2.0 * area * rule.weights[q] *
                  eval_patch_bubble(patch, fan, k, t, rule.points[q]);
      }
      const double want_moment = ((pos + 1 + k) % 2 == 0 ? 1.0 : -1.0) / zeta(k);
      worst_identity =
          std::max(worst_identity, std::abs(moment - want_moment) * zeta(k));

      // weighted orthogonality against a random polynomial of degree k
      std::vector<double> coeff(poly.size());
      for (double& c : coeff) c = value(rng);
      std::array<double, 3> at_z{0, 0, 0};
      at_z[lz] = 1.0;
      poly.eval(at_z, basis_values);
      double qz = 0.0;
      for (int i = 0; i < poly.size(); ++i) qz += coeff[i] * basis_values[i];
      double bq = 0.0;
      double scale = 0.0;
      for (int q = 0; q < rule.size(); ++q) {
        poly.eval(rule.points[q], basis_values);
        double qv = 0.0;
        for (int i = 0; i < poly.size(); ++i) qv += coeff[i] * basis_values[i];
        const double bv = eval_patch_bubble(patch, fan, k, t, rule.points[q]);
        bq += 2.0 * area * rule.weights[q] * bv * qv;
        scale += 2.0 * area * rule.weights[q] * std::abs(bv * qv);
      }
      const double rel =
          std::abs(bq - qz * moment) / std::max(1.0, scale);
      worst_identity = std::max(worst_identity, rel);
    }

    // gram bound on random coefficient triples
    for (int rep = 0; rep < 50; ++rep) {
      const Mesh fan = random_fan(rng, 3);
      const int t = 0;
      const double area = fan.area(t);
      auto bubble = [&](int lv, const std::array<double, 3>& b) {
        return jacobi_p02(k, 1.0 - 2.0 * b[lv]) / area;
      };
      const std::array<double, 3> c{value(rng), value(rng), value(rng)};
      double q_int = 0.0, q2_int = 0.0;
      for (int q = 0; q < rule.size(); ++q) {
        const double w = 2.0 * area * rule.weights[q];
        const double qv = c[0] * bubble(0, rule.points[q]) +
                          c[1] * bubble(1, rule.points[q]) +
                          c[2] * bubble(2, rule.points[q]);
        q_int += w * qv;
        q2_int += w * qv * qv;
      }
      const double min_dist2 = q2_int - q_int * q_int / area;
      const double lhs = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]) / area;
      if (min_dist2 > 0.0) {
        worst_gram = std::max(worst_gram, lhs / ((12.0 / 7.0) * min_dist2));
      }
    }
  }
  pass = worst_identity <= 1e-11 && worst_gram <= 1.0 + 1e-9;
  report(2, "patch bubble identities and gram bound", pass,
         fmt("worst identity dev=%.2e, worst gram ratio=%.6f", worst_identity,
             worst_gram),
         now() - t0);
}

// --- criterion 3: lemma and proposition property suite ---------------------

void criterion_3() {
  const double t0 = now();
  std::mt19937 rng(2025);
  bool pass = true;
  std::ostringstream detail;

  {
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      worst = std::max(worst, check_rotation_identity(angle(rng), angle(rng),
                                                      angle(rng)));
    }
    pass = pass && worst <= 1e-12;
    detail << fmt("rot=%.1e ", worst);
  }
  {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    int tested = 0;
    bool ok = true;
    while (tested < 1000) {
      const double theta = angle(rng);
      if (std::abs(std::sin(theta)) < 1e-3) continue;
      ++tested;
      const auto [cond, bound] = check_cond_bound(theta);
      ok = ok && cond <= bound * (1.0 + 1e-12);
    }
    pass = pass && ok;
    detail << (ok ? "cond=ok " : "cond=violated ");
  }
  {
    std::uniform_real_distribution<double> mag(0.0, 1.0);
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      const auto [lhs, rhs] = check_four_direction_inequality(
          make_compatible_patch(rng, 0.6 * mag(rng)));
      ok = ok && lhs <= rhs * (1.0 + 1e-9) + 1e-13;
      if (rhs > 0.0) worst = std::max(worst, lhs / rhs);
    }
    pass = pass && ok;
    detail << fmt("fourdir=%.3f ", worst);
  }
  {
    std::uniform_real_distribution<double> value(-2.0, 2.0);
    const Mesh coarse = criss_cross_mesh(0.19);
    const Mesh fine = red_refine(coarse);
    std::vector<VertexPatch> patches{vertex_patch(coarse, 4)};
    for (int z = 0; z < fine.n_vertices(); ++z) {
      if (!fine.boundary_vertex[z]) patches.push_back(vertex_patch(fine, z));
    }
    double worst = 0.0;
    for (int it = 0; it < 1000; ++it) {
      const VertexPatch& patch = patches[it % patches.size()];
      const int n = patch.size();
      std::vector<double> traces(n);
      for (int i = 0; i + 1 < n; ++i) traces[i] = value(rng);
      double partial = 0.0;
      for (int i = 0; i + 1 < n; ++i) {
        partial += (i % 2 == 0 ? -1.0 : 1.0) * traces[i];
      }
      traces[n - 1] = (n % 2 == 0 ? -1.0 : 1.0) * partial;
      const std::vector<Point2> d = solve_patch_compatibility(patch, traces, true);
      for (int i = 0; i < n; ++i) {
        const int next = (i + 1) % n;
        const Point2 nn{patch.ray_dirs[next].y, -patch.ray_dirs[next].x};
        const Point2 ni{patch.ray_dirs[i].y, -patch.ray_dirs[i].x};
        const double rhs = dot(d[i], nn) - dot(d[next], ni);
        worst = std::max(worst,
                         std::abs(traces[i] * patch.sin_angle[i] - rhs));
      }
    }
    pass = pass && worst <= 1e-12 * 2.0;
    detail << fmt("delta=%.1e", worst);
  }
  report(3, "lemma/proposition property suite", pass, detail.str(), now() - t0);
}

// --- criteria 4-6: h-convergence, divergence control, pollution ------------

struct LevelData {
  double err_grad = 0.0, err_p = 0.0, err_total = 0.0;
  double div_norm = 0.0, grad_norm = 0.0;
  bool failed = false;
};

std::vector<LevelData> sweep_levels(double eps, int k, int levels, bool wired) {
  const ManufacturedSolution exact;
  std::vector<LevelData> out;
  Mesh mesh = criss_cross_mesh(eps);
  const ToolConfig tool;
  for (int level = 0; level < levels; ++level) {
    if (level > 0) mesh = red_refine(mesh);
    LevelData data;
    const VelocityDofMap vmap = build_velocity_space(mesh, k);
    const PressureDofMap pmap = build_pressure_space(mesh, k);
    const std::vector<int> critical =
        wired ? std::vector<int>{4} : std::vector<int>{};
    const ConstraintSet constraints =
        build_constraints_for_vertices(mesh, pmap, critical);
    const QuadratureRule rule = gauss_triangle(2 * k + tool.quad_bump);
    const QuadratureRule fine_rule =
        gauss_triangle(2 * k + tool.quad_bump + tool.load_bump);
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
      data.err_grad = eg;
      data.err_p = ep;
      data.err_total = eg + ep;
      data.div_norm = divergence_norm(mesh, vmap, vbasis, u_full, rule);
      data.grad_norm = std::sqrt(std::max(0.0, sol.u.dot(sys.A * sol.u)));
      data.failed = !std::isfinite(data.err_total);
    } catch (const Error&) {
      data.failed = true;
    }
    out.push_back(data);
  }
  return out;
}

bool converges_optimally(const std::vector<LevelData>& levels, double rate) {
  for (const LevelData& l : levels) {
    if (l.failed || !std::isfinite(l.err_total)) return false;
  }
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    if (levels[i + 1].err_total >= levels[i].err_total) return false;
  }
  const std::size_t n = levels.size();
  return eoc(levels[n - 2].err_total, levels[n - 1].err_total) >= rate;
}

void criteria_4_5() {
  const double t0 = now();
  const double eps = 0.01;
  const std::vector<LevelData> wired = sweep_levels(eps, 4, 4, true);
  const double theta = theta_of_vertex(vertex_patch(criss_cross_mesh(eps), 4));

  bool pass4 = true;
  for (const LevelData& l : wired) pass4 = pass4 && !l.failed;
  const double last_eoc =
      pass4 ? eoc(wired[2].err_total, wired[3].err_total) : 0.0;
  pass4 = pass4 && last_eoc >= 3.8;
  report(4, "h-convergence of the wired variant", pass4,
         fmt("eoc(last two)=%.3f", last_eoc), now() - t0);

  const double t1 = now();
  bool pass5 = true;
  double worst_ratio = 0.0;
  for (const LevelData& l : wired) {
    if (l.failed) {
      pass5 = false;
      break;
    }
    worst_ratio = std::max(worst_ratio, l.div_norm / (theta * l.err_grad));
  }
  pass5 = pass5 && worst_ratio <= 10.0;

  const std::vector<LevelData> classical = sweep_levels(eps, 4, 4, false);
  double worst_classical = 0.0;
  for (const LevelData& l : classical) {
    if (l.failed) {
      pass5 = false;
      break;
    }
    worst_classical = std::max(worst_classical, l.div_norm / l.grad_norm);
  }
  pass5 = pass5 && worst_classical <= 1e-9;
  report(5, "divergence control", pass5,
         fmt("wired div/(theta*err)=%.3f, classical div/|grad u|=%.1e",
             worst_ratio, worst_classical),
         now() - t1);
}

void criterion_6() {
  const double t0 = now();
  const double eps = 1e-8;
  const std::vector<LevelData> wired = sweep_levels(eps, 4, 3, true);
  const std::vector<LevelData> classical = sweep_levels(eps, 4, 3, false);

  const bool wired_ok = converges_optimally(wired, 3.5);
  const bool classical_fails = !converges_optimally(classical, 3.5);
  std::ostringstream detail;
  if (!wired[2].failed && !wired[1].failed) {
    detail << fmt("wired eoc=%.3f ", eoc(wired[1].err_total, wired[2].err_total));
  }
  if (!classical[2].failed && !classical[1].failed) {
    detail << fmt("classical eoc=%.3f err=%.2e",
                  eoc(classical[1].err_total, classical[2].err_total),
                  classical[2].err_total);
  } else {
    detail << "classical solver failed";
  }
  report(6, "robustness/pollution contrast at eps=1e-8",
         wired_ok && classical_fails, detail.str(), now() - t0);
}

// --- criterion 7: inf-sup scaling -------------------------------------------

void criterion_7() {
  const double t0 = now();
  const std::vector<double> eps_list{1e-2, 1e-3, 1e-4, 1e-5};
  std::vector<double> beta_u, beta_c;
  bool pointwise = true;
  for (double eps : eps_list) {
    Mesh mesh = red_refine(criss_cross_mesh(eps));
    const int k = 4;
    const VelocityDofMap vmap = build_velocity_space(mesh, k);
    const PressureDofMap pmap = build_pressure_space(mesh, k);
    const QuadratureRule rule = gauss_triangle(2 * k + 2);
    auto zero_force = [](Point2) { return std::array<double, 2>{0.0, 0.0}; };
    const SaddleSystem classical = build_saddle_system(
        mesh, vmap, pmap, build_constraints_for_vertices(mesh, pmap, {}),
        zero_force, rule, rule);
    const SaddleSystem wired = build_saddle_system(
        mesh, vmap, pmap, build_constraints_for_vertices(mesh, pmap, {4}),
        zero_force, rule, rule);
    beta_u.push_back(estimate_infsup(classical).beta);
    beta_c.push_back(estimate_infsup(wired).beta);
    pointwise = pointwise && beta_c.back() >= beta_u.back() - 1e-12;
  }
  // least-squares slope of log beta against log eps
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(eps_list.size());
  for (int i = 0; i < n; ++i) {
    const double x = std::log(eps_list[i]);
    const double y = std::log(beta_u[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double cmin = beta_c[0], cmax = beta_c[0];
  for (double b : beta_c) {
    cmin = std::min(cmin, b);
    cmax = std::max(cmax, b);
  }
  const bool pass = std::abs(slope - 1.0) <= 0.15 && cmax / cmin <= 1.25 &&
                    pointwise;
  report(7, "inf-sup scaling", pass,
         fmt("classical slope=%.3f, wired max/min=%.4f, subspace order %s",
             slope, cmax / cmin, pointwise ? "holds" : "violated"),
         now() - t0);
}

// --- criterion 8: exponential k-convergence ---------------------------------

void criterion_8() {
  const double t0 = now();
  BenchConfig config;
  config.k = 4;
  config.k_max = 8;
  config.eps_list = {0.01};
  config.eta_policy = EtaPolicy::Critical;
  const RunReport report_k = run_k_benchmark(config);
  bool pass = report_k.records.size() == 5 && !report_k.any_errors();
  std::ostringstream detail;
  if (pass) {
    const double initial = report_k.records[0].err_total;
    for (std::size_t i = 0; i + 1 < report_k.records.size(); ++i) {
      const double cur = report_k.records[i].err_total;
      const double next = report_k.records[i + 1].err_total;
      detail << fmt("%.2e ", cur);
      if (cur <= 1e-10 * initial) break;  // rounding plateau reached
      if (next > 0.5 * cur) {
        pass = false;
      }
    }
    detail << fmt("%.2e", report_k.records.back().err_total);
  }
  report(8, "exponential k-convergence", pass, detail.str(), now() - t0);
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criteria_4_5();
  criterion_6();
  criterion_7();
  criterion_8();
  if (failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criteria FAILED\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
