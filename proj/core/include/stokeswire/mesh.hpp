#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace stokeswire {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
// counterclockwise quarter turn
inline Point2 perp(Point2 a) { return {-a.y, a.x}; }

// Vertex ids stored counterclockwise (signed area > 0).
struct Triangle {
  std::array<int, 3> v{-1, -1, -1};
};

// Undirected edge; a < b. tri[0] is the adjacent triangle with the lower id,
// tri[1] the other one or -1 on the boundary.
struct Edge {
  int a = -1, b = -1;
  std::array<int, 2> tri{-1, -1};
};

// Conforming triangulation. Immutable after construction; connectivity and
// boundary flags are derived once in build_mesh.
class Mesh {
 public:
  std::vector<Point2> vertices;
  std::vector<Triangle> triangles;
  std::vector<Edge> edges;
  std::vector<std::array<int, 3>> triangle_edges;  // edge id of (v0,v1),(v1,v2),(v2,v0)
  std::vector<std::uint8_t> boundary_vertex;
  std::vector<std::uint8_t> boundary_edge;
  std::vector<std::vector<int>> vertex_triangles;  // unordered incidence

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }

  int edge_index(int u, int v) const;  // -1 if absent
  double area(int t) const;
  double diameter(int t) const;
  Point2 vertex_of(int t, int local) const { return vertices[triangles[t].v[local]]; }
  // local index of vertex z in triangle t, or -1
  int local_vertex(int t, int z) const;
};

// The cyclic counterclockwise fan of triangles around a vertex.
// triangles[j] spans the sector between the rays ray_dirs[j] and
// ray_dirs[j+1] (cyclic for interior vertices). For interior vertices there
// are N rays and edge j is shared by triangles j-1 and j; for boundary
// vertices there are N+1 rays and the first/last rays lie on the boundary.
struct VertexPatch {
  int center = -1;
  bool is_boundary = false;
  std::vector<int> triangles;
  std::vector<double> angles;             // angle at the center in triangles[j]
  std::vector<double> sin_angle, cos_angle;  // from normalized cross/dot
  std::vector<int> ray_vertices;          // far endpoint of each ray
  std::vector<Point2> ray_dirs;           // unit directions of the rays

  int size() const { return static_cast<int>(triangles.size()); }
  double angle_sum() const;
  // position of triangle t in the fan, or -1
  int position_of(int t) const;
};

Mesh build_mesh(std::vector<Point2> vertices, std::vector<std::array<int, 3>> tris);

// Unit square split into four triangles around the interior vertex
// (1/2 + eps, 1/2); eps in [0, 1/2).
Mesh criss_cross_mesh(double eps);

// Uniform subdivision of every triangle into four congruent children via the
// edge midpoints. Parent vertices keep their ids.
Mesh red_refine(const Mesh& mesh);

VertexPatch vertex_patch(const Mesh& mesh, int z);

// max over triangles of diameter / inscribed-circle diameter
double shape_regularity(const Mesh& mesh);

// min over boundary vertices of the exterior angle 2*pi - (interior angle sum)
double min_outer_angle(const Mesh& mesh);

// smallest triangle angle in the mesh
double min_angle(const Mesh& mesh);

// Text format: "nv nt" header, nv lines "x y b", nt lines "i j k".
Mesh read_mesh(std::istream& in);
Mesh read_mesh_file(const std::string& path);
void write_mesh(std::ostream& out, const Mesh& mesh);

}  // namespace stokeswire
