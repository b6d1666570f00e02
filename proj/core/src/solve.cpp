#include "stokeswire/solve.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <cmath>
#include <vector>

#include "stokeswire/errors.hpp"

namespace stokeswire {

DiscreteSolution solve_stokes(const SaddleSystem& sys) {
  const int nu = sys.n_velocity, np = sys.n_pressure, nc = sys.n_constraints;
  const int n = nu + np + nc;

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(sys.A.nonZeros() + 2 * sys.B.nonZeros() + 2 * sys.C.nonZeros());
  for (int col = 0; col < sys.A.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.A, col); it; ++it) {
      triplets.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (int col = 0; col < sys.B.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.B, col); it; ++it) {
      // B and B^T
      triplets.emplace_back(nu + it.row(), it.col(), it.value());
      triplets.emplace_back(it.col(), nu + it.row(), it.value());
    }
  }
  for (int col = 0; col < sys.C.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.C, col); it; ++it) {
      triplets.emplace_back(nu + np + it.row(), nu + it.col(), it.value());
      triplets.emplace_back(nu + it.col(), nu + np + it.row(), it.value());
    }
  }
  Eigen::SparseMatrix<double> kkt(n, n);
  kkt.setFromTriplets(triplets.begin(), triplets.end());
  kkt.makeCompressed();

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs.head(nu) = sys.f;

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(kkt);
  if (lu.info() != Eigen::Success) {
    throw SingularSystemError("saddle-point factorization failed: " + lu.lastErrorMessage());
  }
  const Eigen::VectorXd x = lu.solve(rhs);
  if (!x.allFinite()) {
    throw SingularSystemError("saddle-point solve produced non-finite values");
  }

  DiscreteSolution sol;
  sol.u = x.head(nu);
  sol.p = -x.segment(nu, np);  // the symmetric form carries -p
  sol.lambda = x.tail(nc);

  const double fscale = std::max(sys.f.norm(), 1e-300);
  sol.momentum_residual =
      (sys.A * sol.u - sys.B.transpose() * sol.p - sys.f).norm() / fscale;
  sol.mass_residual =
      (sys.B * sol.u + sys.C.transpose() * sol.lambda).norm() / fscale;
  const double pscale = std::max(sol.p.lpNorm<Eigen::Infinity>(), 1e-300);
  sol.constraint_residual = nc > 0
      ? (sys.C * sol.p).lpNorm<Eigen::Infinity>() / pscale
      : 0.0;
  return sol;
}

std::array<double, 2> velocity_value(const Mesh& mesh, const VelocityDofMap& vmap,
                                     const ReferenceBasis& basis,
                                     const Eigen::VectorXd& u_full, int t,
                                     const std::array<double, 3>& bary) {
  (void)mesh;
  std::vector<double> values(basis.size());
  basis.eval(bary, values);
  std::array<double, 2> v{0.0, 0.0};
  for (int i = 0; i < basis.size(); ++i) {
    const int node = vmap.cell_nodes[t][i];
    v[0] += values[i] * u_full[vmap.dof(node, 0)];
    v[1] += values[i] * u_full[vmap.dof(node, 1)];
  }
  return v;
}

Eigen::Matrix2d velocity_gradient(const Mesh& mesh, const VelocityDofMap& vmap,
                                  const ReferenceBasis& basis,
                                  const Eigen::VectorXd& u_full, int t,
                                  const std::array<double, 3>& bary) {
  std::vector<std::array<double, 3>> ref_grads(basis.size());
  basis.eval_grad(bary, ref_grads);
  const auto lg = barycentric_gradients(mesh, t);
  Eigen::Matrix2d g = Eigen::Matrix2d::Zero();
  for (int i = 0; i < basis.size(); ++i) {
    const Point2 grad = ref_grads[i][0] * lg[0] + ref_grads[i][1] * lg[1] +
                        ref_grads[i][2] * lg[2];
    const int node = vmap.cell_nodes[t][i];
    const double ux = u_full[vmap.dof(node, 0)], uy = u_full[vmap.dof(node, 1)];
    g(0, 0) += ux * grad.x;
    g(0, 1) += ux * grad.y;
    g(1, 0) += uy * grad.x;
    g(1, 1) += uy * grad.y;
  }
  return g;
}

double pressure_value(const PressureDofMap& pmap, const ReferenceBasis& pbasis,
                      const Eigen::VectorXd& p, int t,
                      const std::array<double, 3>& bary) {
  std::vector<double> values(pbasis.size());
  pbasis.eval(bary, values);
  double v = 0.0;
  for (int c = 0; c < pbasis.size(); ++c) v += values[c] * p[pmap.dof(t, c)];
  return v;
}

Eigen::VectorXd interpolate_velocity(const VelocityDofMap& vmap, const VectorField& u) {
  Eigen::VectorXd dofs(vmap.n_dofs());
  for (int n = 0; n < vmap.n_nodes; ++n) {
    const std::array<double, 2> v = u(vmap.node_coords[n]);
    dofs[vmap.dof(n, 0)] = v[0];
    dofs[vmap.dof(n, 1)] = v[1];
  }
  return dofs;
}

Eigen::VectorXd interpolate_pressure(const Mesh& mesh, const PressureDofMap& pmap,
                                     const ScalarField& p) {
  const ReferenceBasis pbasis(pmap.degree);
  Eigen::VectorXd dofs(pmap.n_dofs());
  for (int t = 0; t < pmap.n_triangles; ++t) {
    const Point2 p0 = mesh.vertex_of(t, 0), p1 = mesh.vertex_of(t, 1),
                 p2 = mesh.vertex_of(t, 2);
    for (int c = 0; c < pbasis.size(); ++c) {
      const auto b = pbasis.node_bary(c);
      dofs[pmap.dof(t, c)] = p(b[0] * p0 + b[1] * p1 + b[2] * p2);
    }
  }
  return dofs;
}

double divergence_norm(const Mesh& mesh, const VelocityDofMap& vmap,
                       const ReferenceBasis& basis, const Eigen::VectorXd& u_full,
                       const QuadratureRule& rule) {
  std::vector<std::array<double, 3>> ref_grads(basis.size());
  double total = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto lg = barycentric_gradients(mesh, t);
    const double area = mesh.area(t);
    for (int q = 0; q < rule.size(); ++q) {
      basis.eval_grad(rule.points[q], ref_grads);
      double div = 0.0;
      for (int i = 0; i < basis.size(); ++i) {
        const Point2 grad = ref_grads[i][0] * lg[0] + ref_grads[i][1] * lg[1] +
                            ref_grads[i][2] * lg[2];
        const int node = vmap.cell_nodes[t][i];
        div += u_full[vmap.dof(node, 0)] * grad.x +
               u_full[vmap.dof(node, 1)] * grad.y;
      }
      total += 2.0 * area * rule.weights[q] * div * div;
    }
  }
  return std::sqrt(total);
}

std::pair<double, double> error_norms(const Mesh& mesh, const VelocityDofMap& vmap,
                                      const PressureDofMap& pmap,
                                      const Eigen::VectorXd& u_full,
                                      const Eigen::VectorXd& p,
                                      const TensorField& exact_grad_u,
                                      const ScalarField& exact_p,
                                      const QuadratureRule& rule) {
  const ReferenceBasis vbasis(vmap.degree);
  const ReferenceBasis pbasis(pmap.degree);
  std::vector<std::array<double, 3>> ref_grads(vbasis.size());
  std::vector<double> pvalues(pbasis.size());
  double grad_err = 0.0, p_err = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto lg = barycentric_gradients(mesh, t);
    const double area = mesh.area(t);
    const Point2 p0 = mesh.vertex_of(t, 0), p1 = mesh.vertex_of(t, 1),
                 p2 = mesh.vertex_of(t, 2);
    for (int q = 0; q < rule.size(); ++q) {
      const auto& b = rule.points[q];
      const Point2 x = b[0] * p0 + b[1] * p1 + b[2] * p2;
      const double w = 2.0 * area * rule.weights[q];

      vbasis.eval_grad(b, ref_grads);
      Eigen::Matrix2d g = -exact_grad_u(x);
      for (int i = 0; i < vbasis.size(); ++i) {
        const Point2 grad = ref_grads[i][0] * lg[0] + ref_grads[i][1] * lg[1] +
                            ref_grads[i][2] * lg[2];
        const int node = vmap.cell_nodes[t][i];
        const double ux = u_full[vmap.dof(node, 0)], uy = u_full[vmap.dof(node, 1)];
        g(0, 0) += ux * grad.x;
        g(0, 1) += ux * grad.y;
        g(1, 0) += uy * grad.x;
        g(1, 1) += uy * grad.y;
      }
      grad_err += w * g.squaredNorm();

      pbasis.eval(b, pvalues);
      double ph = -exact_p(x);
      for (int c = 0; c < pbasis.size(); ++c) ph += pvalues[c] * p[pmap.dof(t, c)];
      p_err += w * ph * ph;
    }
  }
  return {std::sqrt(grad_err), std::sqrt(p_err)};
}

InfSupEstimate estimate_infsup(const SaddleSystem& sys) {
  const int np = sys.n_pressure;

  // orthonormal basis of the constrained pressure space ker(C)
  Eigen::MatrixXd z;
  if (sys.n_constraints == 0) {
    z = Eigen::MatrixXd::Identity(np, np);
  } else {
    Eigen::MatrixXd ct = Eigen::MatrixXd(sys.C.transpose());
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(ct);
    const int rank = static_cast<int>(qr.rank());
    if (rank >= np) throw EmptyPressureSpaceError("constraints exhaust the pressure space");
    const Eigen::MatrixXd q = qr.householderQ();
    z = q.rightCols(np - rank);
  }
  if (z.cols() == 0) throw EmptyPressureSpaceError("constrained pressure space is empty");

  Eigen::SparseMatrix<double> h = sys.A + sys.Mu;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(h);
  if (llt.info() != Eigen::Success) {
    throw EigSolverFailureError("H1 Gram matrix factorization failed");
  }
  const Eigen::MatrixXd w = sys.B.transpose() * z;       // nu x nz
  const Eigen::MatrixXd hw = llt.solve(w);
  const Eigen::MatrixXd schur = w.transpose() * hw;      // nz x nz
  const Eigen::MatrixXd mz = z.transpose() * (sys.Mp * z);

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(schur, mz);
  if (eig.info() != Eigen::Success) {
    throw EigSolverFailureError("generalized eigensolver did not converge");
  }
  InfSupEstimate est;
  est.mu_min = eig.eigenvalues().minCoeff();
  est.beta = std::sqrt(std::max(est.mu_min, 0.0));
  est.n_velocity = sys.n_velocity;
  est.n_pressure = static_cast<int>(z.cols());
  return est;
}

}  // namespace stokeswire
