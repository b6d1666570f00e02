#pragma once

#include <Eigen/Dense>
#include <array>

#include "stokeswire/mesh.hpp"

namespace stokeswire {

// Smooth benchmark solution on the unit square: the velocity is the
// (scaled) vector curl of sin^2(pi x) sin^2(pi y), hence pointwise
// divergence-free and zero on the boundary; the pressure is a sharp
// smooth exponential shifted to zero mean. The body force -Laplace(u) +
// grad(p) is available in closed form.
class ManufacturedSolution {
 public:
  ManufacturedSolution();

  std::array<double, 2> velocity(Point2 x) const;
  Eigen::Matrix2d velocity_gradient(Point2 x) const;  // (i,j) = d u_i / d x_j
  double pressure(Point2 x) const;
  std::array<double, 2> force(Point2 x) const;

  double mean_shift() const { return mean_shift_; }

 private:
  double mean_shift_;
};

// integral over [0,1] of exp(-1/(x-c)^2), the essential-singularity factor
// of the benchmark pressure (composite Gauss panels split at c)
double flat_bump_integral(double c);

}  // namespace stokeswire
