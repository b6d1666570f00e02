#include "stokeswire/polynomials.hpp"

#include <cmath>
#include <numbers>

#include "stokeswire/errors.hpp"

namespace stokeswire {

double jacobi_p02(int k, double t) {
  if (k < 0) throw UnsupportedDegreeError("jacobi degree must be >= 0");
  if (k == 0) return 1.0;
  double pm1 = 1.0;        // P_0
  double p = 2.0 * t - 1.0;  // P_1
  for (int n = 2; n <= k; ++n) {
    const double num =
        (2.0 * n + 1.0) * (n * (n + 1.0) * t - 1.0) * p -
        (n - 1.0) * (n + 1.0) * (n + 1.0) * pm1;
    pm1 = p;
    p = num / (double(n) * n * (n + 2.0));
  }
  return p;
}

double zeta(int k) { return 0.5 * (k + 2.0) * (k + 1.0); }

double weighted_moment(int k) {
  if (k < 1) throw UnsupportedDegreeError("weighted moment needs k >= 1");
  return (k % 2 == 0 ? 1.0 : -1.0) / zeta(k);
}

void gauss_legendre_01(int n, std::vector<double>& points,
                       std::vector<double>& weights) {
  points.assign(n, 0.0);
  weights.assign(n, 0.0);
  // Newton iteration on Legendre polynomials, nodes on [-1,1] then mapped
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    points[i] = 0.5 * (1.0 - x);
    weights[i] = 0.5 * w;
    points[n - 1 - i] = 0.5 * (1.0 + x);
    weights[n - 1 - i] = 0.5 * w;
  }
}

QuadratureRule gauss_triangle(int target_degree) {
  if (target_degree < 0) throw QuadratureUnsupportedError("negative degree");
  if (target_degree > 60) {
    throw QuadratureUnsupportedError("quadrature degree above supported limit");
  }
  const int d = target_degree;
  // Duffy map (u, v) -> (u, v(1-u)); the Jacobian (1-u) raises the u-degree by one.
  const int nu = (d + 2 + 1) / 2 + 1;
  const int nv = (d + 1 + 1) / 2 + 1;
  std::vector<double> pu, wu, pv, wv;
  gauss_legendre_01(nu, pu, wu);
  gauss_legendre_01(nv, pv, wv);

  QuadratureRule rule;
  rule.degree = d;
  rule.points.reserve(nu * nv);
  rule.weights.reserve(nu * nv);
  for (int a = 0; a < nu; ++a) {
    for (int b = 0; b < nv; ++b) {
      const double x = pu[a];
      const double y = pv[b] * (1.0 - pu[a]);
      rule.points.push_back({1.0 - x - y, x, y});
      rule.weights.push_back(wu[a] * wv[b] * (1.0 - pu[a]));
    }
  }
  return rule;
}

ReferenceBasis::ReferenceBasis(int degree) : degree_(degree) {
  if (degree < 0) throw UnsupportedDegreeError("basis degree must be >= 0");
  for (int i = degree; i >= 0; --i) {
    for (int j = degree - i; j >= 0; --j) {
      lattice_.push_back({i, j, degree - i - j});
    }
  }
}

std::array<double, 3> ReferenceBasis::node_bary(int n) const {
  const auto& m = lattice_[n];
  if (degree_ == 0) return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  const double k = degree_;
  return {m[0] / k, m[1] / k, m[2] / k};
}

namespace {

// value and derivative of R_m(t) = prod_{r=0}^{m-1} (k*t - r)/(m - r)
inline void silvester(int m, int k, double t, double& value, double& deriv) {
  value = 1.0;
  deriv = 0.0;
  for (int r = 0; r < m; ++r) {
    const double scale = 1.0 / (m - r);
    const double f = (k * t - r) * scale;
    deriv = deriv * f + value * k * scale;
    value *= f;
  }
}

}  // namespace

void ReferenceBasis::eval(const std::array<double, 3>& bary,
                          std::span<double> values) const {
  if (degree_ == 0) {
    values[0] = 1.0;
    return;
  }
  double dummy;
  for (int n = 0; n < size(); ++n) {
    const auto& m = lattice_[n];
    double v0, v1, v2;
    silvester(m[0], degree_, bary[0], v0, dummy);
    silvester(m[1], degree_, bary[1], v1, dummy);
    silvester(m[2], degree_, bary[2], v2, dummy);
    values[n] = v0 * v1 * v2;
  }
}

void ReferenceBasis::eval_grad(const std::array<double, 3>& bary,
                               std::span<std::array<double, 3>> grads) const {
  if (degree_ == 0) {
    grads[0] = {0.0, 0.0, 0.0};
    return;
  }
  for (int n = 0; n < size(); ++n) {
    const auto& m = lattice_[n];
    double v[3], d[3];
    for (int c = 0; c < 3; ++c) silvester(m[c], degree_, bary[c], v[c], d[c]);
    grads[n] = {d[0] * v[1] * v[2], v[0] * d[1] * v[2], v[0] * v[1] * d[2]};
  }
}

std::array<Point2, 3> barycentric_gradients(const Mesh& mesh, int t) {
  const double inv2a = 1.0 / (2.0 * mesh.area(t));
  std::array<Point2, 3> g;
  for (int m = 0; m < 3; ++m) {
    const Point2 opposite = mesh.vertex_of(t, (m + 2) % 3) - mesh.vertex_of(t, (m + 1) % 3);
    g[m] = inv2a * perp(opposite);
  }
  return g;
}

std::array<double, 3> barycentric_coords(const Mesh& mesh, int t, Point2 p) {
  const double inv2a = 1.0 / (2.0 * mesh.area(t));
  std::array<double, 3> bary;
  for (int m = 0; m < 3; ++m) {
    const Point2 a = mesh.vertex_of(t, (m + 1) % 3);
    const Point2 b = mesh.vertex_of(t, (m + 2) % 3);
    bary[m] = cross(b - a, p - a) * inv2a;
  }
  return bary;
}

double eval_patch_bubble(const VertexPatch& patch, const Mesh& mesh, int k,
                         int tri, const std::array<double, 3>& bary) {
  const int pos = patch.position_of(tri);
  if (pos < 0) throw TriangleNotInPatchError("triangle not in the vertex patch");
  const int lz = mesh.local_vertex(tri, patch.center);
  const double lambda_z = bary[lz];
  const double sign = (pos % 2 == 0) ? -1.0 : 1.0;  // (-1)^j, j = pos+1
  return sign / mesh.area(tri) * jacobi_p02(k, 1.0 - 2.0 * lambda_z);
}

}  // namespace stokeswire
