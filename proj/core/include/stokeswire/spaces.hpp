#pragma once

#include <Eigen/SparseCore>
#include <utility>
#include <vector>

#include "stokeswire/mesh.hpp"
#include "stokeswire/polynomials.hpp"

namespace stokeswire {

// Continuous vector-valued Lagrange space of degree k with homogeneous
// Dirichlet data. Scalar nodes are shared across triangles (vertex, edge,
// interior); a dof is 2*node + component.
struct VelocityDofMap {
  int degree = 0;
  int n_nodes = 0;
  std::vector<std::vector<int>> cell_nodes;  // per triangle, per lattice node
  std::vector<Point2> node_coords;
  std::vector<std::uint8_t> node_on_boundary;
  std::vector<int> free_of_node;  // free node index or -1
  std::vector<int> node_of_free;

  int n_dofs() const { return 2 * n_nodes; }
  int n_free_nodes() const { return static_cast<int>(node_of_free.size()); }
  int n_free_dofs() const { return 2 * n_free_nodes(); }
  int dof(int node, int comp) const { return 2 * node + comp; }
};

VelocityDofMap build_velocity_space(const Mesh& mesh, int k);

// Discontinuous pressure space of degree k-1: one independent block of
// dim P_{k-1} per triangle.
struct PressureDofMap {
  int degree = 0;      // polynomial degree k-1
  int block_size = 0;  // (degree+1)(degree+2)/2
  int n_triangles = 0;

  int n_dofs() const { return block_size * n_triangles; }
  int dof(int tri, int local) const { return tri * block_size + local; }
};

PressureDofMap build_pressure_space(const Mesh& mesh, int k);

// One linear functional on the pressure dofs. source_vertex is -1 for the
// mean-zero row and the critical vertex id for an alternating-trace row.
struct ConstraintRow {
  int source_vertex = -1;
  std::vector<std::pair<int, double>> entries;
};

struct ConstraintSet {
  std::vector<ConstraintRow> rows;

  int size() const { return static_cast<int>(rows.size()); }
  Eigen::SparseMatrix<double> matrix(int n_pressure_dofs) const;
};

// Mean-zero row plus one alternating row per eta-critical vertex.
ConstraintSet build_constraints(const Mesh& mesh, const PressureDofMap& pressure,
                                double eta);

// Same, but with an explicitly chosen critical vertex set.
ConstraintSet build_constraints_for_vertices(const Mesh& mesh,
                                             const PressureDofMap& pressure,
                                             const std::vector<int>& critical);

// Drops linearly dependent rows (rank-revealing QR); logs when rows go.
ConstraintSet prune_redundant(const ConstraintSet& constraints, int n_pressure_dofs);

int constraint_rank(const ConstraintSet& constraints, int n_pressure_dofs);

// raw pressure dimension minus the rank of the constraint rows
int pressure_subspace_dim(const ConstraintSet& constraints,
                          const PressureDofMap& pressure);

}  // namespace stokeswire
