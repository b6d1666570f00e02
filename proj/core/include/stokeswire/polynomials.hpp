#pragma once

#include <array>
#include <span>
#include <vector>

#include "stokeswire/mesh.hpp"

namespace stokeswire {

// Jacobi polynomial with weights (0,2) by the three-term recurrence.
// Endpoints: P_k(1) = 1, P_k(-1) = (-1)^k * zeta(k).
double jacobi_p02(int k, double t);

// binomial(k+2, 2)
double zeta(int k);

// |K|^{-1} * integral over a triangle of P_k^{(0,2)}(1 - 2*lambda_z),
// which is (-1)^k / zeta(k) for every triangle and every vertex z.
double weighted_moment(int k);

// Quadrature on the reference triangle {(0,0),(1,0),(0,1)}; points in
// barycentric coordinates, weights summing to the reference area 1/2.
struct QuadratureRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
  int degree = 0;

  int size() const { return static_cast<int>(points.size()); }
};

// Rule exact for all polynomials of total degree <= target_degree
// (collapsed tensor Gauss-Legendre).
QuadratureRule gauss_triangle(int target_degree);

// Gauss-Legendre points/weights on [0,1].
void gauss_legendre_01(int n, std::vector<double>& points, std::vector<double>& weights);

// Nodal Lagrange basis of degree k on the principal lattice of the reference
// triangle. Basis functions are products of linear factors in the barycentric
// coordinates, so nodal values are exact by construction.
class ReferenceBasis {
 public:
  explicit ReferenceBasis(int degree);

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(lattice_.size()); }

  // lattice multi-indices (i,j,l), i+j+l = k; node n sits at barycentric
  // (i,j,l)/k. Nodes (k,0,0),(0,k,0),(0,0,k) are the triangle vertices.
  const std::vector<std::array<int, 3>>& lattice() const { return lattice_; }
  std::array<double, 3> node_bary(int n) const;

  void eval(const std::array<double, 3>& bary, std::span<double> values) const;
  // partial derivatives with respect to the three barycentric coordinates
  void eval_grad(const std::array<double, 3>& bary,
                 std::span<std::array<double, 3>> grads) const;

 private:
  int degree_;
  std::vector<std::array<int, 3>> lattice_;
};

// gradients of the barycentric coordinates of triangle t
std::array<Point2, 3> barycentric_gradients(const Mesh& mesh, int t);

// barycentric coordinates of a physical point in triangle t
std::array<double, 3> barycentric_coords(const Mesh& mesh, int t, Point2 p);

// The patchwise bubble around the patch center z: on the j-th fan triangle
// (1-based) it equals (-1)^j |K_j|^{-1} P_k^{(0,2)}(1 - 2 lambda_z).
// `tri` must belong to the patch; `bary` is given in the triangle's own
// stored vertex order.
double eval_patch_bubble(const VertexPatch& patch, const Mesh& mesh, int k,
                         int tri, const std::array<double, 3>& bary);

}  // namespace stokeswire
