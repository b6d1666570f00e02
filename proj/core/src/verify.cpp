#include "stokeswire/verify.hpp"

#include <cmath>
#include <numbers>

#include "stokeswire/errors.hpp"
#include "stokeswire/singularity.hpp"

namespace stokeswire {

namespace {

// normal of a ray: clockwise quarter turn of the tangent, the orientation
// that turns the compatibility system into delta_i + delta_{i+1} = q_i
Point2 ray_normal(Point2 t) { return {t.y, -t.x}; }

constexpr double kCompatibilityTol = 1e-12;

// frozen from a reference-patch calibration sweep; see tests for the suite
constexpr double kCorollaryCalibration = 4.0;

}  // namespace

Eigen::Matrix2d rotation(double theta) {
  Eigen::Matrix2d r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

double check_rotation_identity(double a, double b, double c) {
  const Eigen::Matrix2d lhs = std::sin(a - b) * rotation(c) -
                              std::sin(c - b) * rotation(a) -
                              std::sin(a - c) * rotation(b);
  return lhs.cwiseAbs().maxCoeff();
}

std::pair<double, double> check_cond_bound(double theta) {
  const double s = std::sin(theta);
  if (std::abs(s) < 1e-12) {
    throw DegenerateAngleError("columns are (anti)parallel");
  }
  Eigen::Matrix2d m;
  m.col(0) = Eigen::Vector2d(1.0, 0.0);
  m.col(1) = Eigen::Vector2d(std::cos(theta), std::sin(theta));
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(m);
  const double cond = svd.singularValues()(0) / svd.singularValues()(1);
  return {cond, 2.0 / std::abs(s)};
}

std::array<double, 2> FourDirectionPatch::field(int j, Point2 dx) const {
  const Eigen::Vector2d d(dx.x, dx.y);
  std::array<double, 2> v;
  for (int c = 0; c < 2; ++c) {
    v[c] = gradients[j].row(c).dot(d) + 0.5 * d.dot(hessians[j][c] * d);
  }
  return v;
}

FourDirectionPatch make_compatible_patch(std::mt19937& rng, double perturb) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  FourDirectionPatch patch;
  std::array<double, 4> raw;
  double sum = 0.0;
  for (double& a : raw) {
    a = std::numbers::pi / 2.0 + perturb * unit(rng);
    sum += a;
  }
  const double scale = 2.0 * std::numbers::pi / sum;
  double phi = unit(rng) * std::numbers::pi;  // random global rotation
  for (int j = 0; j < 4; ++j) {
    patch.angles[j] = raw[j] * scale;
    patch.dirs[j] = {std::cos(phi), std::sin(phi)};
    phi += patch.angles[j];
  }

  auto random_matrix = [&] {
    Eigen::Matrix2d m;
    m << unit(rng), unit(rng), unit(rng), unit(rng);
    return m;
  };
  auto as_vec = [](Point2 p) { return Eigen::Vector2d(p.x, p.y); };

  // chain the derivative-matching conditions (G_{j-1} - G_j) t_j = 0
  patch.gradients[0] = random_matrix();
  for (int j = 1; j < 3; ++j) {
    const Eigen::Vector2d t = as_vec(patch.dirs[j]);
    const Eigen::Matrix2d m = random_matrix();
    patch.gradients[j] = m + ((patch.gradients[j - 1] - m) * t) * t.transpose();
  }
  // the last gradient closes the cycle: G_4 t_4 = G_3 t_4 and G_4 t_1 = G_1 t_1
  {
    const Eigen::Vector2d t4 = as_vec(patch.dirs[3]);
    const Eigen::Vector2d t1 = as_vec(patch.dirs[0]);
    Eigen::Matrix2d basis;
    basis.col(0) = t4;
    basis.col(1) = t1;
    Eigen::Matrix2d values;
    values.col(0) = patch.gradients[2] * t4;
    values.col(1) = patch.gradients[0] * t1;
    patch.gradients[3] = values * basis.inverse();
  }

  for (int j = 0; j < 4; ++j) {
    for (int c = 0; c < 2; ++c) {
      Eigen::Matrix2d h = random_matrix();
      patch.hessians[j][c] = 0.5 * (h + h.transpose());
    }
  }
  return patch;
}

std::pair<double, double> check_four_direction_inequality(
    const FourDirectionPatch& patch) {
  auto as_vec = [](Point2 p) { return Eigen::Vector2d(p.x, p.y); };
  double gscale = 0.0;
  for (int j = 0; j < 4; ++j) gscale = std::max(gscale, patch.gradients[j].norm());
  for (int j = 0; j < 4; ++j) {
    const int prev = (j + 3) % 4;
    const double mismatch =
        ((patch.gradients[prev] - patch.gradients[j]) * as_vec(patch.dirs[j])).norm();
    if (mismatch > 1e-12 * std::max(1.0, gscale)) {
      throw IncompatibleFieldsError("edge derivative matching fails");
    }
  }

  double alternating = 0.0, grad_sum = 0.0;
  for (int j = 0; j < 4; ++j) {
    const double sign = (j % 2 == 0) ? -1.0 : 1.0;  // (-1)^{j+1}, 1-based
    alternating += sign * patch.gradients[j].trace();
    grad_sum += patch.gradients[j].norm();
  }
  const double mu = std::min(std::abs(std::sin(patch.angles[1])),
                             std::abs(std::sin(patch.angles[3])));
  const double theta =
      std::max(std::abs(std::sin(patch.angles[0] + patch.angles[1])),
               std::abs(std::sin(patch.angles[1] + patch.angles[2])));
  const double lhs = mu * std::abs(std::sin(patch.angles[0])) * std::abs(alternating);
  const double rhs = std::sqrt(8.0) * theta * grad_sum;
  return {lhs, rhs};
}

std::vector<Point2> solve_patch_compatibility(const VertexPatch& patch,
                                              std::span<const double> traces,
                                              bool eta_critical) {
  if (patch.is_boundary) {
    throw Error("patch compatibility system requires an interior patch");
  }
  const int n = patch.size();
  if (static_cast<int>(traces.size()) != n) {
    throw LengthMismatchError("one trace per patch triangle required");
  }
  double qscale = 1.0;
  for (double q : traces) qscale = std::max(qscale, std::abs(q));

  std::vector<Point2> d(n);
  if (eta_critical) {
    const double alternating = alternating_functional(patch, traces);
    if (std::abs(alternating) > kCompatibilityTol * qscale) {
      throw ConditionViolatedError("alternating trace sum must vanish");
    }
    // tangential ansatz: d_i = delta_i t_i with delta_1 = 0 and the signed
    // partial sums of the traces
    std::vector<double> delta(n, 0.0);
    for (int m = 1; m < n; ++m) {
      double s = 0.0;
      for (int j = 0; j < m; ++j) {
        s += ((m - 1 - j) % 2 == 0 ? 1.0 : -1.0) * traces[j];
      }
      delta[m] = s;
    }
    double dnorm2 = 0.0, qnorm2 = 0.0;
    for (int i = 0; i < n; ++i) {
      d[i] = delta[i] * patch.ray_dirs[i];
      dnorm2 += delta[i] * delta[i];
      qnorm2 += traces[i] * traces[i];
    }
    // residual of the full vector system
    double residual = 0.0;
    for (int i = 0; i < n; ++i) {
      const int next = (i + 1) % n;
      const double lhs = traces[i] * patch.sin_angle[i];
      const double rhs = dot(d[i], ray_normal(patch.ray_dirs[next])) -
                         dot(d[next], ray_normal(patch.ray_dirs[i]));
      residual = std::max(residual, std::abs(lhs - rhs));
    }
    if (residual > kCompatibilityTol * qscale) {
      throw InfeasibleSystemError("tangential construction residual too large");
    }
    if (dnorm2 > double(n) * n * qnorm2 * (1.0 + 1e-9)) {
      throw InfeasibleSystemError("critical-branch norm bound violated");
    }
    return d;
  }

  // non-critical branch: minimum-norm least squares on the same system
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, 2 * n);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    const int next = (i + 1) % n;
    const Point2 nn = ray_normal(patch.ray_dirs[next]);
    const Point2 ni = ray_normal(patch.ray_dirs[i]);
    a(i, 2 * i) += nn.x;
    a(i, 2 * i + 1) += nn.y;
    a(i, 2 * next) -= ni.x;
    a(i, 2 * next + 1) -= ni.y;
    b(i) = traces[i] * patch.sin_angle[i];
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  const Eigen::VectorXd x = cod.solve(b);
  const double residual = (a * x - b).norm();
  if (residual > 1e-10 * std::max(1.0, b.norm())) {
    throw InfeasibleSystemError("compatibility system has no solution");
  }
  double xi = 0.0, qnorm2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const int next = (i + 1) % n;
    xi += std::abs(patch.sin_angle[i] * patch.cos_angle[next] +
                   patch.cos_angle[i] * patch.sin_angle[next]);
    qnorm2 += traces[i] * traces[i];
  }
  const double factor = 1.0 + n / xi;
  if (x.squaredNorm() > 2.0 * factor * factor * qnorm2 * (1.0 + 1e-9)) {
    throw InfeasibleSystemError("non-critical norm bound violated");
  }
  for (int i = 0; i < n; ++i) d[i] = {x(2 * i), x(2 * i + 1)};
  return d;
}

std::pair<double, double> check_patch_divergence_corollary(
    const Mesh& mesh, const VelocityDofMap& vmap, const ReferenceBasis& basis,
    const Eigen::VectorXd& u_full, int z, double eta) {
  const VertexPatch patch = vertex_patch(mesh, z);
  if (theta_of_vertex(patch) > eta) {
    throw NotCriticalError("vertex is not eta-critical");
  }

  std::vector<double> div_traces(patch.size());
  double h_z = 0.0, grad_norm2 = 0.0;
  const QuadratureRule rule = gauss_triangle(2 * vmap.degree);
  std::vector<std::array<double, 3>> ref_grads(basis.size());
  for (int pos = 0; pos < patch.size(); ++pos) {
    const int t = patch.triangles[pos];
    std::array<double, 3> bary{0.0, 0.0, 0.0};
    bary[mesh.local_vertex(t, z)] = 1.0;
    div_traces[pos] = velocity_gradient(mesh, vmap, basis, u_full, t, bary).trace();
    h_z = std::max(h_z, mesh.diameter(t));

    const auto lg = barycentric_gradients(mesh, t);
    const double area = mesh.area(t);
    for (int q = 0; q < rule.size(); ++q) {
      basis.eval_grad(rule.points[q], ref_grads);
      Eigen::Matrix2d g = Eigen::Matrix2d::Zero();
      for (int i = 0; i < basis.size(); ++i) {
        const Point2 grad = ref_grads[i][0] * lg[0] + ref_grads[i][1] * lg[1] +
                            ref_grads[i][2] * lg[2];
        const int node = vmap.cell_nodes[t][i];
        g(0, 0) += u_full[vmap.dof(node, 0)] * grad.x;
        g(0, 1) += u_full[vmap.dof(node, 0)] * grad.y;
        g(1, 0) += u_full[vmap.dof(node, 1)] * grad.x;
        g(1, 1) += u_full[vmap.dof(node, 1)] * grad.y;
      }
      grad_norm2 += 2.0 * area * rule.weights[q] * g.squaredNorm();
    }
  }

  const double phi = min_angle(mesh);
  const double alternating = alternating_functional(patch, div_traces);
  const double k = vmap.degree;
  const double lhs = std::sin(phi) * std::sin(phi) * std::abs(alternating);
  const double rhs = kCorollaryCalibration / h_z * k * k * eta * std::sqrt(grad_norm2);
  return {lhs, rhs};
}

}  // namespace stokeswire
