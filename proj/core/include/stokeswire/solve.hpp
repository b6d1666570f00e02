#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <functional>

#include "stokeswire/assembly.hpp"

namespace stokeswire {

using VectorField = std::function<std::array<double, 2>(Point2)>;
// (i,j) entry is the derivative of component i in direction j
using TensorField = std::function<Eigen::Matrix2d(Point2)>;
using ScalarField = std::function<double(Point2)>;

struct DiscreteSolution {
  Eigen::VectorXd u;       // free velocity dofs
  Eigen::VectorXd p;       // pressure dofs
  Eigen::VectorXd lambda;  // constraint multipliers
  double momentum_residual = 0.0;
  double mass_residual = 0.0;
  double constraint_residual = 0.0;
};

// Direct factorization of the symmetric indefinite KKT system
// [A B^T 0; B 0 C^T; 0 C 0] [u; -p; lambda] = [f; 0; 0].
DiscreteSolution solve_stokes(const SaddleSystem& sys);

// pointwise evaluation of discrete fields (u_full over all velocity dofs)
std::array<double, 2> velocity_value(const Mesh& mesh, const VelocityDofMap& vmap,
                                     const ReferenceBasis& basis,
                                     const Eigen::VectorXd& u_full, int t,
                                     const std::array<double, 3>& bary);
Eigen::Matrix2d velocity_gradient(const Mesh& mesh, const VelocityDofMap& vmap,
                                  const ReferenceBasis& basis,
                                  const Eigen::VectorXd& u_full, int t,
                                  const std::array<double, 3>& bary);
double pressure_value(const PressureDofMap& pmap, const ReferenceBasis& pbasis,
                      const Eigen::VectorXd& p, int t,
                      const std::array<double, 3>& bary);

// nodal interpolation into the discrete spaces
Eigen::VectorXd interpolate_velocity(const VelocityDofMap& vmap, const VectorField& u);
Eigen::VectorXd interpolate_pressure(const Mesh& mesh, const PressureDofMap& pmap,
                                     const ScalarField& p);

// L2 norm of div(u) by elementwise quadrature
double divergence_norm(const Mesh& mesh, const VelocityDofMap& vmap,
                       const ReferenceBasis& basis, const Eigen::VectorXd& u_full,
                       const QuadratureRule& rule);

// (grad-error of the velocity, L2 error of the pressure)
std::pair<double, double> error_norms(const Mesh& mesh, const VelocityDofMap& vmap,
                                      const PressureDofMap& pmap,
                                      const Eigen::VectorXd& u_full,
                                      const Eigen::VectorXd& p,
                                      const TensorField& exact_grad_u,
                                      const ScalarField& exact_p,
                                      const QuadratureRule& rule);

struct InfSupEstimate {
  double beta = 0.0;
  double mu_min = 0.0;  // smallest Schur eigenvalue
  int n_velocity = 0;
  int n_pressure = 0;  // constrained pressure dimension
};

// Smallest eigenvalue of the pressure Schur complement restricted to the
// constrained pressure space: Z^T B H^{-1} B^T Z x = mu Z^T Mp Z x with
// H = A + Mu and Z an orthonormal null-space basis of C. beta = sqrt(mu_min).
// Dense; intended for desk-scale systems.
InfSupEstimate estimate_infsup(const SaddleSystem& sys);

}  // namespace stokeswire
