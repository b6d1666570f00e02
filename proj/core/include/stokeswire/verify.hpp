#pragma once

#include <Eigen/Dense>
#include <array>
#include <random>
#include <span>
#include <vector>

#include "stokeswire/mesh.hpp"
#include "stokeswire/solve.hpp"

namespace stokeswire {

// 2D rotation by theta
Eigen::Matrix2d rotation(double theta);

// Largest entry of sin(a-b)R(c) - sin(c-b)R(a) - sin(a-c)R(b); zero for the
// exact identity.
double check_rotation_identity(double a, double b, double c);

// Condition number of the 2x2 matrix with unit columns enclosing the angle
// theta, paired with the bound 2/|sin theta|.
std::pair<double, double> check_cond_bound(double theta);

// Four directions around a point with per-sector quadratic vector fields
// whose edge directional derivatives match across the rays.
struct FourDirectionPatch {
  std::array<Point2, 4> dirs;          // unit, counterclockwise
  std::array<double, 4> angles;        // signed, sum 2*pi
  std::array<Eigen::Matrix2d, 4> gradients;  // field gradients at the center
  // symmetric quadratic coefficients per sector and component
  std::array<std::array<Eigen::Matrix2d, 2>, 4> hessians;

  // field j evaluated at an offset from the center
  std::array<double, 2> field(int j, Point2 dx) const;
};

// Random patch with angles pi/2 + O(perturb); the cyclic derivative-matching
// conditions are imposed exactly by construction.
FourDirectionPatch make_compatible_patch(std::mt19937& rng, double perturb);

// (lhs, rhs) of the alternating-divergence inequality
//   mu |sin t1| |sum_j (-1)^j div v_j| <= sqrt(8) Theta sum_j |grad v_j|_F.
// Throws IncompatibleFieldsError when the matching conditions fail.
std::pair<double, double> check_four_direction_inequality(const FourDirectionPatch& patch);

// Edge vectors d_i solving the patch compatibility system
//   q_i sin(theta_i) = <d_i, n_{i+1}> - <d_{i+1}, n_i>   (cyclic)
// on an interior patch. The critical branch uses the explicit tangential
// construction d_i = delta_i t_i (requires the alternating sum of the traces
// to vanish); the non-critical branch returns the minimum-norm least-squares
// solution. Both verify the residual and the norm bound of their branch.
std::vector<Point2> solve_patch_compatibility(const VertexPatch& patch,
                                              std::span<const double> traces,
                                              bool eta_critical);

// (lhs, rhs) of the discrete alternating-divergence bound at an eta-critical
// vertex z: lhs = sin^2(phi) |A_z(div v)|, rhs the calibrated
// h^{-1} k^2 eta |grad v| patch bound.
std::pair<double, double> check_patch_divergence_corollary(
    const Mesh& mesh, const VelocityDofMap& vmap, const ReferenceBasis& basis,
    const Eigen::VectorXd& u_full, int z, double eta);

}  // namespace stokeswire
