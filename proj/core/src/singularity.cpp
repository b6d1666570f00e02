#include "stokeswire/singularity.hpp"

#include <cmath>
#include <ostream>

#include "stokeswire/errors.hpp"

namespace stokeswire {

double theta_of_vertex(const VertexPatch& patch) {
  const int n = patch.size();
  if (patch.is_boundary && n == 1) return 0.0;
  // sin(theta_i + theta_{i+1}) by the angle-sum identity; the per-angle
  // sin/cos come from normalized cross/dot products, which keeps the
  // near-cancellation regime theta_i + theta_{i+1} ~ pi accurate.
  auto pair_sin = [&](int i, int j) {
    return patch.sin_angle[i] * patch.cos_angle[j] +
           patch.cos_angle[i] * patch.sin_angle[j];
  };
  const int pairs = patch.is_boundary ? n - 1 : n;
  double theta = 0.0;
  for (int i = 0; i < pairs; ++i) {
    theta = std::max(theta, std::abs(pair_sin(i, (i + 1) % n)));
  }
  return theta;
}

std::vector<int> eta_critical_set(const Mesh& mesh, double eta) {
  std::vector<int> critical;
  for (int z = 0; z < mesh.n_vertices(); ++z) {
    if (theta_of_vertex(vertex_patch(mesh, z)) <= eta) critical.push_back(z);
  }
  return critical;
}

double theta_min(const Mesh& mesh) {
  double best = 2.0;
  for (int z = 0; z < mesh.n_vertices(); ++z) {
    const double theta = theta_of_vertex(vertex_patch(mesh, z));
    if (theta > 0.0) best = std::min(best, theta);
  }
  if (best > 1.0) throw AllSingularError("every vertex has theta = 0");
  return best;
}

double alternating_functional(const VertexPatch& patch,
                              std::span<const double> traces) {
  if (static_cast<int>(traces.size()) != patch.size()) {
    throw LengthMismatchError("one trace per patch triangle required");
  }
  double a = 0.0;
  double sign = -1.0;  // (-1)^l for l = 1..N
  for (double q : traces) {
    a += sign * q;
    sign = -sign;
  }
  return a;
}

SingularityReport singularity_report(const Mesh& mesh, double eta) {
  SingularityReport report;
  report.theta.resize(mesh.n_vertices());
  double best = 2.0;
  for (int z = 0; z < mesh.n_vertices(); ++z) {
    report.theta[z] = theta_of_vertex(vertex_patch(mesh, z));
    if (report.theta[z] > 0.0) best = std::min(best, report.theta[z]);
    if (report.theta[z] <= eta) report.critical.push_back(z);
  }
  report.all_singular = best > 1.0;
  report.theta_min = report.all_singular ? 0.0 : best;
  return report;
}

void write_theta_csv(std::ostream& out, const Mesh& mesh) {
  out << "vertex_id,x,y,n_z,is_boundary,theta\n";
  out.precision(17);
  for (int z = 0; z < mesh.n_vertices(); ++z) {
    const VertexPatch patch = vertex_patch(mesh, z);
    out << z << ',' << mesh.vertices[z].x << ',' << mesh.vertices[z].y << ','
        << patch.size() << ',' << int(patch.is_boundary) << ','
        << theta_of_vertex(patch) << '\n';
  }
}

}  // namespace stokeswire
