#pragma once

#include <Eigen/SparseCore>
#include <functional>
#include <iosfwd>

#include "stokeswire/mesh.hpp"
#include "stokeswire/polynomials.hpp"
#include "stokeswire/spaces.hpp"

namespace stokeswire {

using ForceField = std::function<std::array<double, 2>(Point2)>;

// Velocity grad-grad block over all dofs (boundary not yet eliminated).
Eigen::SparseMatrix<double> assemble_stiffness(const Mesh& mesh,
                                               const VelocityDofMap& vmap,
                                               const ReferenceBasis& basis,
                                               const QuadratureRule& rule);

// Velocity mass block over all dofs.
Eigen::SparseMatrix<double> assemble_velocity_mass(const Mesh& mesh,
                                                   const VelocityDofMap& vmap,
                                                   const ReferenceBasis& basis,
                                                   const QuadratureRule& rule);

// div-coupling block: rows are pressure dofs, columns velocity dofs,
// entry = integral of psi_m * div(phi_i).
Eigen::SparseMatrix<double> assemble_divergence(const Mesh& mesh,
                                                const VelocityDofMap& vmap,
                                                const PressureDofMap& pmap,
                                                const ReferenceBasis& vbasis,
                                                const ReferenceBasis& pbasis,
                                                const QuadratureRule& rule);

Eigen::SparseMatrix<double> assemble_pressure_mass(const Mesh& mesh,
                                                   const PressureDofMap& pmap,
                                                   const ReferenceBasis& pbasis,
                                                   const QuadratureRule& rule);

Eigen::VectorXd assemble_load(const Mesh& mesh, const VelocityDofMap& vmap,
                              const ReferenceBasis& basis,
                              const QuadratureRule& rule, const ForceField& f);

// The constrained saddle-point system restricted to free velocity dofs.
// Constraint rows have already been pruned of redundancies.
struct SaddleSystem {
  Eigen::SparseMatrix<double> A;   // free velocity stiffness
  Eigen::SparseMatrix<double> Mu;  // free velocity mass
  Eigen::SparseMatrix<double> B;   // pressure x free velocity
  Eigen::SparseMatrix<double> Mp;  // pressure mass
  Eigen::SparseMatrix<double> C;   // constraint rows x pressure
  Eigen::VectorXd f;               // load on free dofs
  int n_velocity = 0;
  int n_pressure = 0;
  int n_constraints = 0;
};

SaddleSystem build_saddle_system(const Mesh& mesh, const VelocityDofMap& vmap,
                                 const PressureDofMap& pmap,
                                 const ConstraintSet& constraints,
                                 const ForceField& force,
                                 const QuadratureRule& rule,
                                 const QuadratureRule& load_rule);

// restrict full velocity dof vectors/matrices to free dofs
Eigen::SparseMatrix<double> restrict_velocity(const Eigen::SparseMatrix<double>& full,
                                              const VelocityDofMap& vmap);
Eigen::SparseMatrix<double> restrict_velocity_columns(
    const Eigen::SparseMatrix<double>& full, const VelocityDofMap& vmap);
Eigen::VectorXd restrict_velocity(const Eigen::VectorXd& full,
                                  const VelocityDofMap& vmap);
Eigen::VectorXd expand_velocity(const Eigen::VectorXd& free,
                                const VelocityDofMap& vmap);

// coordinate text format: "rows cols nnz" header then "i j value" lines
void write_matrix_coo(std::ostream& out, const Eigen::SparseMatrix<double>& m);

}  // namespace stokeswire
