#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "stokeswire/mesh.hpp"

namespace stokeswire {

// Local singularity measure of a vertex: the largest |sin(theta_i + theta_{i+1})|
// over consecutive patch angles. Interior vertices include the cyclic wrap
// pair, boundary vertices do not; a boundary vertex with a single triangle
// measures 0. Values lie in [0, 1]; 0 means the edges at the vertex fall on
// straight lines.
double theta_of_vertex(const VertexPatch& patch);

// Vertices with theta <= eta (closed comparison).
std::vector<int> eta_critical_set(const Mesh& mesh, double eta);

// Smallest positive theta over all vertices; AllSingularError when none.
double theta_min(const Mesh& mesh);

// Alternating sum of per-triangle vertex traces over the counterclockwise
// fan: sum of (-1)^l * traces[l-1] for l = 1..N.
double alternating_functional(const VertexPatch& patch, std::span<const double> traces);

struct SingularityReport {
  std::vector<double> theta;   // per vertex
  double theta_min = 0.0;      // over positive values; 0 when all singular
  bool all_singular = false;
  std::vector<int> critical;   // eta-critical set for the requested eta
};

SingularityReport singularity_report(const Mesh& mesh, double eta);

// CSV dump: vertex_id,x,y,n_z,is_boundary,theta
void write_theta_csv(std::ostream& out, const Mesh& mesh);

}  // namespace stokeswire
