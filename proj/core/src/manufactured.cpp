#include "stokeswire/manufactured.hpp"

#include <cmath>
#include <numbers>

#include "stokeswire/polynomials.hpp"

namespace stokeswire {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAmplitude = 1e6;
constexpr double kCx = 0.3;
constexpr double kCy = 32.0 / 500.0;

// exp(-1/s^2), extended by its limit 0 across s = 0
double flat_bump(double s) {
  if (std::abs(s) < 0.03) return 0.0;  // underflows anyway; avoids 1/0
  return std::exp(-1.0 / (s * s));
}

// d/ds exp(-1/s^2) = 2 s^{-3} exp(-1/s^2), limit 0 at s = 0
double flat_bump_derivative(double s) {
  if (std::abs(s) < 0.03) return 0.0;
  return 2.0 / (s * s * s) * std::exp(-1.0 / (s * s));
}

}  // namespace

double flat_bump_integral(double c) {
  std::vector<double> pts, wts;
  gauss_legendre_01(20, pts, wts);
  const int panels = 64;
  double total = 0.0;
  for (const auto [lo, hi] : {std::pair{0.0, c}, std::pair{c, 1.0}}) {
    const double width = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
      const double a = lo + p * width;
      for (std::size_t q = 0; q < pts.size(); ++q) {
        total += width * wts[q] * flat_bump(a + pts[q] * width - c);
      }
    }
  }
  return total;
}

ManufacturedSolution::ManufacturedSolution() {
  mean_shift_ = -kAmplitude * flat_bump_integral(kCx) * flat_bump_integral(kCy);
}

std::array<double, 2> ManufacturedSolution::velocity(Point2 x) const {
  const double s1 = std::sin(kPi * x.x), c1 = std::cos(kPi * x.x);
  const double s2 = std::sin(kPi * x.y), c2 = std::cos(kPi * x.y);
  return {s1 * s1 * s2 * c2, -s2 * s2 * s1 * c1};
}

Eigen::Matrix2d ManufacturedSolution::velocity_gradient(Point2 x) const {
  const double s2x = std::sin(2.0 * kPi * x.x), c2x = std::cos(2.0 * kPi * x.x);
  const double s2y = std::sin(2.0 * kPi * x.y), c2y = std::cos(2.0 * kPi * x.y);
  const double sx = std::sin(kPi * x.x), sy = std::sin(kPi * x.y);
  Eigen::Matrix2d g;
  g(0, 0) = 0.5 * kPi * s2x * s2y;
  g(0, 1) = kPi * sx * sx * c2y;
  g(1, 0) = -kPi * sy * sy * c2x;
  g(1, 1) = -0.5 * kPi * s2y * s2x;
  return g;
}

double ManufacturedSolution::pressure(Point2 x) const {
  return kAmplitude * flat_bump(x.x - kCx) * flat_bump(x.y - kCy) + mean_shift_;
}

std::array<double, 2> ManufacturedSolution::force(Point2 x) const {
  const double s2x = std::sin(2.0 * kPi * x.x), c2x = std::cos(2.0 * kPi * x.x);
  const double s2y = std::sin(2.0 * kPi * x.y), c2y = std::cos(2.0 * kPi * x.y);
  const double pi2 = kPi * kPi;
  // -Laplace(u)
  const double lap1 = -pi2 * s2y * (2.0 * c2x - 1.0);
  const double lap2 = pi2 * s2x * (2.0 * c2y - 1.0);
  // grad(p)
  const double gx = flat_bump_derivative(x.x - kCx) * flat_bump(x.y - kCy);
  const double gy = flat_bump(x.x - kCx) * flat_bump_derivative(x.y - kCy);
  return {lap1 + kAmplitude * gx, lap2 + kAmplitude * gy};
}

}  // namespace stokeswire
