#include "stokeswire/spaces.hpp"

#include <Eigen/Dense>
#include <string>

#include "stokeswire/errors.hpp"
#include "stokeswire/report_io.hpp"
#include "stokeswire/singularity.hpp"

namespace stokeswire {

VelocityDofMap build_velocity_space(const Mesh& mesh, int k) {
  if (k < 1) throw UnsupportedDegreeError("velocity degree must be >= 1");
  if (k < 4) {
    log_line(LogLevel::Warn, "spaces",
             "velocity degree k=" + std::to_string(k) +
                 " is below the stability threshold k>=4");
  }
  const int nv = mesh.n_vertices();
  const int ne = mesh.n_edges();
  const int nt = mesh.n_triangles();
  const int per_edge = k - 1;
  const int per_cell = (k - 1) * (k - 2) / 2;

  VelocityDofMap map;
  map.degree = k;
  map.n_nodes = nv + ne * per_edge + nt * per_cell;
  map.node_coords.assign(map.n_nodes, Point2{});
  map.node_on_boundary.assign(map.n_nodes, 0);

  for (int v = 0; v < nv; ++v) {
    map.node_coords[v] = mesh.vertices[v];
    map.node_on_boundary[v] = mesh.boundary_vertex[v];
  }
  for (int e = 0; e < ne; ++e) {
    const Edge& edge = mesh.edges[e];
    for (int s = 0; s < per_edge; ++s) {
      const int node = nv + e * per_edge + s;
      const double t = double(s + 1) / k;
      map.node_coords[node] =
          mesh.vertices[edge.a] + t * (mesh.vertices[edge.b] - mesh.vertices[edge.a]);
      map.node_on_boundary[node] = mesh.boundary_edge[e];
    }
  }

  const ReferenceBasis basis(k);
  map.cell_nodes.assign(nt, std::vector<int>(basis.size(), -1));
  int cell_base = nv + ne * per_edge;
  for (int t = 0; t < nt; ++t) {
    const auto& tv = mesh.triangles[t].v;
    int interior = 0;
    for (int n = 0; n < basis.size(); ++n) {
      const auto& m = basis.lattice()[n];
      int node = -1;
      if (m[0] == k) {
        node = tv[0];
      } else if (m[1] == k) {
        node = tv[1];
      } else if (m[2] == k) {
        node = tv[2];
      } else if (m[2] == 0 || m[0] == 0 || m[1] == 0) {
        // edge node: local edges (v0,v1), (v1,v2), (v2,v0)
        int u, w, steps;
        if (m[2] == 0) {
          u = tv[0], w = tv[1], steps = m[1];
        } else if (m[0] == 0) {
          u = tv[1], w = tv[2], steps = m[2];
        } else {
          u = tv[2], w = tv[0], steps = m[0];
        }
        const int e = mesh.edge_index(u, w);
        const int from_a = (mesh.edges[e].a == u) ? steps : k - steps;
        node = nv + e * per_edge + (from_a - 1);
      } else {
        node = cell_base + interior++;
        const std::array<double, 3> b = basis.node_bary(n);
        map.node_coords[node] = b[0] * mesh.vertices[tv[0]] +
                                b[1] * mesh.vertices[tv[1]] +
                                b[2] * mesh.vertices[tv[2]];
      }
      map.cell_nodes[t][n] = node;
    }
    cell_base += per_cell;
  }

  map.free_of_node.assign(map.n_nodes, -1);
  for (int n = 0; n < map.n_nodes; ++n) {
    if (!map.node_on_boundary[n]) {
      map.free_of_node[n] = static_cast<int>(map.node_of_free.size());
      map.node_of_free.push_back(n);
    }
  }
  return map;
}

PressureDofMap build_pressure_space(const Mesh& mesh, int k) {
  if (k < 1) throw UnsupportedDegreeError("pressure space needs k >= 1");
  PressureDofMap map;
  map.degree = k - 1;
  map.block_size = k * (k + 1) / 2;
  map.n_triangles = mesh.n_triangles();
  return map;
}

Eigen::SparseMatrix<double> ConstraintSet::matrix(int n_pressure_dofs) const {
  Eigen::SparseMatrix<double> c(size(), n_pressure_dofs);
  std::vector<Eigen::Triplet<double>> triplets;
  for (int r = 0; r < size(); ++r) {
    for (const auto& [j, v] : rows[r].entries) triplets.emplace_back(r, j, v);
  }
  c.setFromTriplets(triplets.begin(), triplets.end());
  return c;
}

ConstraintSet build_constraints_for_vertices(const Mesh& mesh,
                                             const PressureDofMap& pressure,
                                             const std::vector<int>& critical) {
  const ReferenceBasis basis(pressure.degree);
  ConstraintSet set;

  // mean-zero row from exact element integrals of the pressure basis
  {
    const QuadratureRule rule = gauss_triangle(pressure.degree);
    std::vector<double> values(basis.size());
    std::vector<double> ref_integral(basis.size(), 0.0);
    for (int q = 0; q < rule.size(); ++q) {
      basis.eval(rule.points[q], values);
      for (int c = 0; c < basis.size(); ++c) {
        ref_integral[c] += rule.weights[q] * values[c];
      }
    }
    ConstraintRow row;
    row.source_vertex = -1;
    for (int t = 0; t < pressure.n_triangles; ++t) {
      const double scale = 2.0 * mesh.area(t);
      for (int c = 0; c < basis.size(); ++c) {
        row.entries.emplace_back(pressure.dof(t, c), scale * ref_integral[c]);
      }
    }
    set.rows.push_back(std::move(row));
  }

  std::vector<double> values(basis.size());
  for (int z : critical) {
    const VertexPatch patch = vertex_patch(mesh, z);
    ConstraintRow row;
    row.source_vertex = z;
    for (int pos = 0; pos < patch.size(); ++pos) {
      const int t = patch.triangles[pos];
      const double sign = (pos % 2 == 0) ? -1.0 : 1.0;  // (-1)^l, l = pos+1
      std::array<double, 3> bary{0.0, 0.0, 0.0};
      bary[mesh.local_vertex(t, z)] = 1.0;
      basis.eval(bary, values);
      for (int c = 0; c < basis.size(); ++c) {
        if (values[c] != 0.0) {
          row.entries.emplace_back(pressure.dof(t, c), sign * values[c]);
        }
      }
    }
    set.rows.push_back(std::move(row));
  }
  return set;
}

ConstraintSet build_constraints(const Mesh& mesh, const PressureDofMap& pressure,
                                double eta) {
  return build_constraints_for_vertices(mesh, pressure,
                                        eta_critical_set(mesh, eta));
}

namespace {

Eigen::MatrixXd dense_transpose(const ConstraintSet& constraints, int np) {
  Eigen::MatrixXd ct = Eigen::MatrixXd::Zero(np, constraints.size());
  for (int r = 0; r < constraints.size(); ++r) {
    for (const auto& [j, v] : constraints.rows[r].entries) ct(j, r) = v;
  }
  return ct;
}

}  // namespace

int constraint_rank(const ConstraintSet& constraints, int n_pressure_dofs) {
  if (constraints.size() == 0) return 0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(
      dense_transpose(constraints, n_pressure_dofs));
  return static_cast<int>(qr.rank());
}

ConstraintSet prune_redundant(const ConstraintSet& constraints,
                              int n_pressure_dofs) {
  if (constraints.size() == 0) return constraints;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(
      dense_transpose(constraints, n_pressure_dofs));
  const int rank = static_cast<int>(qr.rank());
  if (rank == constraints.size()) return constraints;

  const auto perm = qr.colsPermutation().indices();
  std::vector<std::uint8_t> keep(constraints.size(), 0);
  for (int i = 0; i < rank; ++i) keep[perm[i]] = 1;
  ConstraintSet pruned;
  for (int r = 0; r < constraints.size(); ++r) {
    if (keep[r]) {
      pruned.rows.push_back(constraints.rows[r]);
    } else {
      log_line(LogLevel::Warn, "spaces",
               "dropping redundant constraint row (source vertex " +
                   std::to_string(constraints.rows[r].source_vertex) + ")");
    }
  }
  return pruned;
}

int pressure_subspace_dim(const ConstraintSet& constraints,
                          const PressureDofMap& pressure) {
  return pressure.n_dofs() - constraint_rank(constraints, pressure.n_dofs());
}

}  // namespace stokeswire
