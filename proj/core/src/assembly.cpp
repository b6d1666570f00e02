#include "stokeswire/assembly.hpp"

#include <ostream>
#include <vector>

#include "stokeswire/errors.hpp"

namespace stokeswire {

namespace {

// per-quadrature-point physical gradients of the scalar basis on triangle t
struct ElementGeometry {
  std::array<Point2, 3> lambda_grad;
  double area;
};

ElementGeometry geometry(const Mesh& mesh, int t) {
  return {barycentric_gradients(mesh, t), mesh.area(t)};
}

}  // namespace

Eigen::SparseMatrix<double> assemble_stiffness(const Mesh& mesh,
                                               const VelocityDofMap& vmap,
                                               const ReferenceBasis& basis,
                                               const QuadratureRule& rule) {
  if (rule.degree < 2 * (basis.degree() - 1)) {
    throw QuadratureUnsupportedError("stiffness rule below degree 2k-2");
  }
  const int nb = basis.size();
  std::vector<std::array<double, 3>> ref_grads(nb);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.n_triangles()) * nb * nb * 2);

  Eigen::MatrixXd local(nb, nb);
  std::vector<Point2> grads(nb);
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementGeometry geo = geometry(mesh, t);
    local.setZero();
    for (int q = 0; q < rule.size(); ++q) {
      basis.eval_grad(rule.points[q], ref_grads);
      for (int i = 0; i < nb; ++i) {
        grads[i] = ref_grads[i][0] * geo.lambda_grad[0] +
                   ref_grads[i][1] * geo.lambda_grad[1] +
                   ref_grads[i][2] * geo.lambda_grad[2];
      }
      const double w = 2.0 * geo.area * rule.weights[q];
      for (int i = 0; i < nb; ++i) {
        for (int j = 0; j <= i; ++j) {
          local(i, j) += w * dot(grads[i], grads[j]);
        }
      }
    }
    for (int i = 0; i < nb; ++i) {
      for (int j = 0; j < nb; ++j) {
        const double v = (j <= i) ? local(i, j) : local(j, i);
        const int ni = vmap.cell_nodes[t][i], nj = vmap.cell_nodes[t][j];
        for (int c = 0; c < 2; ++c) {
          triplets.emplace_back(vmap.dof(ni, c), vmap.dof(nj, c), v);
        }
      }
    }
  }
  Eigen::SparseMatrix<double> a(vmap.n_dofs(), vmap.n_dofs());
  a.setFromTriplets(triplets.begin(), triplets.end());
  return a;
}

Eigen::SparseMatrix<double> assemble_velocity_mass(const Mesh& mesh,
                                                   const VelocityDofMap& vmap,
                                                   const ReferenceBasis& basis,
                                                   const QuadratureRule& rule) {
  if (rule.degree < 2 * basis.degree()) {
    throw QuadratureUnsupportedError("mass rule below degree 2k");
  }
  const int nb = basis.size();
  std::vector<double> values(nb);
  std::vector<Eigen::Triplet<double>> triplets;
  Eigen::MatrixXd local(nb, nb);
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    local.setZero();
    const double area = mesh.area(t);
    for (int q = 0; q < rule.size(); ++q) {
      basis.eval(rule.points[q], values);
      const double w = 2.0 * area * rule.weights[q];
      for (int i = 0; i < nb; ++i) {
        for (int j = 0; j <= i; ++j) local(i, j) += w * values[i] * values[j];
      }
    }
    for (int i = 0; i < nb; ++i) {
      for (int j = 0; j < nb; ++j) {
        const double v = (j <= i) ? local(i, j) : local(j, i);
        const int ni = vmap.cell_nodes[t][i], nj = vmap.cell_nodes[t][j];
        for (int c = 0; c < 2; ++c) {
          triplets.emplace_back(vmap.dof(ni, c), vmap.dof(nj, c), v);
        }
      }
    }
  }
  Eigen::SparseMatrix<double> m(vmap.n_dofs(), vmap.n_dofs());
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

Eigen::SparseMatrix<double> assemble_divergence(const Mesh& mesh,
                                                const VelocityDofMap& vmap,
                                                const PressureDofMap& pmap,
                                                const ReferenceBasis& vbasis,
                                                const ReferenceBasis& pbasis,
                                                const QuadratureRule& rule) {
  if (rule.degree < vbasis.degree() - 1 + pbasis.degree()) {
    throw QuadratureUnsupportedError("divergence rule below degree 2k-2");
  }
  const int nu = vbasis.size();
  const int np = pbasis.size();
  std::vector<std::array<double, 3>> ref_grads(nu);
  std::vector<double> pvalues(np);
  std::vector<Point2> grads(nu);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.n_triangles()) * nu * np * 2);

  Eigen::MatrixXd local_x(np, nu), local_y(np, nu);
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementGeometry geo = geometry(mesh, t);
    local_x.setZero();
    local_y.setZero();
    for (int q = 0; q < rule.size(); ++q) {
      vbasis.eval_grad(rule.points[q], ref_grads);
      pbasis.eval(rule.points[q], pvalues);
      for (int i = 0; i < nu; ++i) {
        grads[i] = ref_grads[i][0] * geo.lambda_grad[0] +
                   ref_grads[i][1] * geo.lambda_grad[1] +
                   ref_grads[i][2] * geo.lambda_grad[2];
      }
      const double w = 2.0 * geo.area * rule.weights[q];
      for (int m = 0; m < np; ++m) {
        const double wp = w * pvalues[m];
        for (int i = 0; i < nu; ++i) {
          local_x(m, i) += wp * grads[i].x;
          local_y(m, i) += wp * grads[i].y;
        }
      }
    }
    for (int m = 0; m < np; ++m) {
      const int row = pmap.dof(t, m);
      for (int i = 0; i < nu; ++i) {
        const int node = vmap.cell_nodes[t][i];
        triplets.emplace_back(row, vmap.dof(node, 0), local_x(m, i));
        triplets.emplace_back(row, vmap.dof(node, 1), local_y(m, i));
      }
    }
  }
  Eigen::SparseMatrix<double> b(pmap.n_dofs(), vmap.n_dofs());
  b.setFromTriplets(triplets.begin(), triplets.end());
  return b;
}

Eigen::SparseMatrix<double> assemble_pressure_mass(const Mesh& mesh,
                                                   const PressureDofMap& pmap,
                                                   const ReferenceBasis& pbasis,
                                                   const QuadratureRule& rule) {
  if (rule.degree < 2 * pbasis.degree()) {
    throw QuadratureUnsupportedError("pressure mass rule below degree 2(k-1)");
  }
  const int np = pbasis.size();
  std::vector<double> values(np);
  Eigen::MatrixXd ref(np, np);
  ref.setZero();
  for (int q = 0; q < rule.size(); ++q) {
    pbasis.eval(rule.points[q], values);
    for (int i = 0; i < np; ++i) {
      for (int j = 0; j < np; ++j) ref(i, j) += rule.weights[q] * values[i] * values[j];
    }
  }
  std::vector<Eigen::Triplet<double>> triplets;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const double scale = 2.0 * mesh.area(t);
    for (int i = 0; i < np; ++i) {
      for (int j = 0; j < np; ++j) {
        triplets.emplace_back(pmap.dof(t, i), pmap.dof(t, j), scale * ref(i, j));
      }
    }
  }
  Eigen::SparseMatrix<double> m(pmap.n_dofs(), pmap.n_dofs());
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

Eigen::VectorXd assemble_load(const Mesh& mesh, const VelocityDofMap& vmap,
                              const ReferenceBasis& basis,
                              const QuadratureRule& rule, const ForceField& f) {
  const int nb = basis.size();
  std::vector<double> values(nb);
  Eigen::VectorXd load = Eigen::VectorXd::Zero(vmap.n_dofs());
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const double area = mesh.area(t);
    const Point2 p0 = mesh.vertex_of(t, 0), p1 = mesh.vertex_of(t, 1),
                 p2 = mesh.vertex_of(t, 2);
    for (int q = 0; q < rule.size(); ++q) {
      const auto& b = rule.points[q];
      const Point2 x = b[0] * p0 + b[1] * p1 + b[2] * p2;
      const std::array<double, 2> fx = f(x);
      basis.eval(b, values);
      const double w = 2.0 * area * rule.weights[q];
      for (int i = 0; i < nb; ++i) {
        const int node = vmap.cell_nodes[t][i];
        load[vmap.dof(node, 0)] += w * values[i] * fx[0];
        load[vmap.dof(node, 1)] += w * values[i] * fx[1];
      }
    }
  }
  return load;
}

Eigen::SparseMatrix<double> restrict_velocity(const Eigen::SparseMatrix<double>& full,
                                              const VelocityDofMap& vmap) {
  std::vector<Eigen::Triplet<double>> triplets;
  for (int col = 0; col < full.outerSize(); ++col) {
    const int jnode = col / 2;
    if (vmap.free_of_node[jnode] < 0) continue;
    const int jfree = 2 * vmap.free_of_node[jnode] + col % 2;
    for (Eigen::SparseMatrix<double>::InnerIterator it(full, col); it; ++it) {
      const int inode = static_cast<int>(it.row()) / 2;
      if (vmap.free_of_node[inode] < 0) continue;
      const int ifree = 2 * vmap.free_of_node[inode] + it.row() % 2;
      triplets.emplace_back(ifree, jfree, it.value());
    }
  }
  Eigen::SparseMatrix<double> reduced(vmap.n_free_dofs(), vmap.n_free_dofs());
  reduced.setFromTriplets(triplets.begin(), triplets.end());
  return reduced;
}

Eigen::SparseMatrix<double> restrict_velocity_columns(
    const Eigen::SparseMatrix<double>& full, const VelocityDofMap& vmap) {
  std::vector<Eigen::Triplet<double>> triplets;
  for (int col = 0; col < full.outerSize(); ++col) {
    const int jnode = col / 2;
    if (vmap.free_of_node[jnode] < 0) continue;
    const int jfree = 2 * vmap.free_of_node[jnode] + col % 2;
    for (Eigen::SparseMatrix<double>::InnerIterator it(full, col); it; ++it) {
      triplets.emplace_back(static_cast<int>(it.row()), jfree, it.value());
    }
  }
  Eigen::SparseMatrix<double> reduced(full.rows(), vmap.n_free_dofs());
  reduced.setFromTriplets(triplets.begin(), triplets.end());
  return reduced;
}

Eigen::VectorXd restrict_velocity(const Eigen::VectorXd& full,
                                  const VelocityDofMap& vmap) {
  Eigen::VectorXd reduced(vmap.n_free_dofs());
  for (int i = 0; i < vmap.n_free_nodes(); ++i) {
    reduced[2 * i] = full[2 * vmap.node_of_free[i]];
    reduced[2 * i + 1] = full[2 * vmap.node_of_free[i] + 1];
  }
  return reduced;
}

Eigen::VectorXd expand_velocity(const Eigen::VectorXd& free,
                                const VelocityDofMap& vmap) {
  Eigen::VectorXd full = Eigen::VectorXd::Zero(vmap.n_dofs());
  for (int i = 0; i < vmap.n_free_nodes(); ++i) {
    full[2 * vmap.node_of_free[i]] = free[2 * i];
    full[2 * vmap.node_of_free[i] + 1] = free[2 * i + 1];
  }
  return full;
}

SaddleSystem build_saddle_system(const Mesh& mesh, const VelocityDofMap& vmap,
                                 const PressureDofMap& pmap,
                                 const ConstraintSet& constraints,
                                 const ForceField& force,
                                 const QuadratureRule& rule,
                                 const QuadratureRule& load_rule) {
  const ReferenceBasis vbasis(vmap.degree);
  const ReferenceBasis pbasis(pmap.degree);

  SaddleSystem sys;
  sys.A = restrict_velocity(assemble_stiffness(mesh, vmap, vbasis, rule), vmap);
  sys.Mu = restrict_velocity(assemble_velocity_mass(mesh, vmap, vbasis, rule), vmap);
  sys.B = restrict_velocity_columns(
      assemble_divergence(mesh, vmap, pmap, vbasis, pbasis, rule), vmap);
  sys.Mp = assemble_pressure_mass(mesh, pmap, pbasis, rule);
  const ConstraintSet pruned = prune_redundant(constraints, pmap.n_dofs());
  sys.C = pruned.matrix(pmap.n_dofs());
  sys.f = restrict_velocity(assemble_load(mesh, vmap, vbasis, load_rule, force), vmap);
  sys.n_velocity = vmap.n_free_dofs();
  sys.n_pressure = pmap.n_dofs();
  sys.n_constraints = pruned.size();
  return sys;
}

void write_matrix_coo(std::ostream& out, const Eigen::SparseMatrix<double>& m) {
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  out.precision(17);
  for (int col = 0; col < m.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, col); it; ++it) {
      out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    }
  }
}

}  // namespace stokeswire
