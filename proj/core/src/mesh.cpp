#include "stokeswire/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "stokeswire/errors.hpp"

namespace stokeswire {

namespace {

double signed_area(Point2 a, Point2 b, Point2 c) {
  return 0.5 * cross(b - a, c - a);
}

// squared distance of p to the segment [a,b]
double segment_distance_sq(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Point2 q = a + t * ab;
  return dot(p - q, p - q);
}

}  // namespace

int Mesh::edge_index(int u, int v) const {
  if (u > v) std::swap(u, v);
  for (int t : vertex_triangles[u]) {
    for (int m = 0; m < 3; ++m) {
      const Edge& e = edges[triangle_edges[t][m]];
      if (e.a == u && e.b == v) return triangle_edges[t][m];
    }
  }
  return -1;
}

double Mesh::area(int t) const {
  const Triangle& tri = triangles[t];
  return signed_area(vertices[tri.v[0]], vertices[tri.v[1]], vertices[tri.v[2]]);
}

double Mesh::diameter(int t) const {
  const Triangle& tri = triangles[t];
  double h = 0.0;
  for (int m = 0; m < 3; ++m) {
    h = std::max(h, norm(vertices[tri.v[m]] - vertices[tri.v[(m + 1) % 3]]));
  }
  return h;
}

int Mesh::local_vertex(int t, int z) const {
  for (int m = 0; m < 3; ++m) {
    if (triangles[t].v[m] == z) return m;
  }
  return -1;
}

double VertexPatch::angle_sum() const {
  double s = 0.0;
  for (double a : angles) s += a;
  return s;
}

int VertexPatch::position_of(int t) const {
  for (int j = 0; j < size(); ++j) {
    if (triangles[j] == t) return j;
  }
  return -1;
}

Mesh build_mesh(std::vector<Point2> vertices, std::vector<std::array<int, 3>> tris) {
  Mesh mesh;
  mesh.vertices = std::move(vertices);
  const int nv = mesh.n_vertices();

  mesh.triangles.reserve(tris.size());
  for (auto& t : tris) {
    for (int id : t) {
      if (id < 0 || id >= nv) {
        throw IndexOutOfRangeError("triangle vertex id " + std::to_string(id) +
                                   " out of range");
      }
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      throw DegenerateTriangleError("repeated vertex id in triangle");
    }
    Point2 a = mesh.vertices[t[0]], b = mesh.vertices[t[1]], c = mesh.vertices[t[2]];
    double area2 = signed_area(a, b, c);
    if (area2 < 0.0) {  // normalize orientation
      std::swap(t[1], t[2]);
      area2 = -area2;
    }
    double h = std::max({norm(b - a), norm(c - b), norm(a - c)});
    if (area2 <= 1e-14 * h * h) {
      throw DegenerateTriangleError("triangle area below tolerance");
    }
    mesh.triangles.push_back(Triangle{t});
  }
  const int nt = mesh.n_triangles();

  // derive edges
  std::map<std::pair<int, int>, int> edge_of;
  mesh.triangle_edges.assign(nt, {-1, -1, -1});
  for (int t = 0; t < nt; ++t) {
    const auto& v = mesh.triangles[t].v;
    for (int m = 0; m < 3; ++m) {
      int u = v[m], w = v[(m + 1) % 3];
      if (u > w) std::swap(u, w);
      auto [it, inserted] = edge_of.try_emplace({u, w}, mesh.n_edges());
      if (inserted) {
        mesh.edges.push_back(Edge{u, w, {t, -1}});
      } else {
        Edge& e = mesh.edges[it->second];
        if (e.tri[1] != -1) {
          throw NonConformingError("edge shared by more than two triangles");
        }
        e.tri[1] = t;
      }
      mesh.triangle_edges[t][m] = it->second;
    }
  }

  mesh.boundary_edge.assign(mesh.n_edges(), 0);
  mesh.boundary_vertex.assign(nv, 0);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    if (mesh.edges[e].tri[1] == -1) {
      mesh.boundary_edge[e] = 1;
      mesh.boundary_vertex[mesh.edges[e].a] = 1;
      mesh.boundary_vertex[mesh.edges[e].b] = 1;
    }
  }

  mesh.vertex_triangles.assign(nv, {});
  for (int t = 0; t < nt; ++t) {
    for (int id : mesh.triangles[t].v) mesh.vertex_triangles[id].push_back(t);
  }

  // Hanging-node detection: no vertex may sit in the interior of a boundary
  // edge. Interior hanging nodes already trip the shared-by-three check above.
  for (int e = 0; e < mesh.n_edges(); ++e) {
    if (!mesh.boundary_edge[e]) continue;
    const Edge& edge = mesh.edges[e];
    const Point2 a = mesh.vertices[edge.a], b = mesh.vertices[edge.b];
    const double len = norm(b - a);
    for (int v = 0; v < nv; ++v) {
      if (v == edge.a || v == edge.b) continue;
      const Point2 p = mesh.vertices[v];
      if (segment_distance_sq(p, a, b) < (1e-12 * len) * (1e-12 * len)) {
        throw NonConformingError("vertex " + std::to_string(v) +
                                 " hangs on edge (" + std::to_string(edge.a) +
                                 "," + std::to_string(edge.b) + ")");
      }
    }
  }

  // every vertex must belong to at least one triangle
  for (int v = 0; v < nv; ++v) {
    if (mesh.vertex_triangles[v].empty()) {
      throw NonConformingError("isolated vertex " + std::to_string(v));
    }
  }

  return mesh;
}

Mesh criss_cross_mesh(double eps) {
  if (!(eps >= 0.0 && eps < 0.5)) {
    throw OutOfRangeError("criss-cross perturbation must lie in [0, 1/2)");
  }
  std::vector<Point2> v = {
      {0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}, {0.5 + eps, 0.5}};
  std::vector<std::array<int, 3>> t = {
      {0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}};
  return build_mesh(std::move(v), std::move(t));
}

Mesh red_refine(const Mesh& mesh) {
  std::vector<Point2> v = mesh.vertices;
  const int nv = mesh.n_vertices();
  // one new vertex per edge
  std::vector<int> midpoint(mesh.n_edges());
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const Edge& edge = mesh.edges[e];
    midpoint[e] = nv + e;
    v.push_back(0.5 * (mesh.vertices[edge.a] + mesh.vertices[edge.b]));
  }
  std::vector<std::array<int, 3>> t;
  t.reserve(4 * mesh.n_triangles());
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const auto& tv = mesh.triangles[k].v;
    const auto& te = mesh.triangle_edges[k];
    const int m01 = midpoint[te[0]], m12 = midpoint[te[1]], m20 = midpoint[te[2]];
    t.push_back({tv[0], m01, m20});
    t.push_back({m01, tv[1], m12});
    t.push_back({m20, m12, tv[2]});
    t.push_back({m01, m12, m20});
  }
  return build_mesh(std::move(v), std::move(t));
}

VertexPatch vertex_patch(const Mesh& mesh, int z) {
  if (z < 0 || z >= mesh.n_vertices()) {
    throw IndexOutOfRangeError("vertex id out of range");
  }
  const auto& incident = mesh.vertex_triangles[z];

  // Around z each triangle runs counterclockwise from a "start" ray to an
  // "end" ray; the end ray of one triangle is the start ray of the next.
  struct Fan {
    int tri;
    int start;  // far vertex of the start ray
    int end;
  };
  std::map<int, Fan> by_start;
  std::map<int, int> end_count;
  for (int t : incident) {
    const int lz = mesh.local_vertex(t, z);
    const auto& tv = mesh.triangles[t].v;
    Fan f{t, tv[(lz + 1) % 3], tv[(lz + 2) % 3]};
    by_start[f.start] = f;
    end_count[f.end] += 1;
  }

  int first = -1;
  if (mesh.boundary_vertex[z]) {
    // boundary vertex: start at the triangle whose start ray is a boundary edge
    for (const auto& [start, f] : by_start) {
      if (!end_count.count(start)) {
        first = f.tri;
        break;
      }
    }
    if (first == -1) throw NonConformingError("boundary patch has no start edge");
  } else {
    first = *std::min_element(incident.begin(), incident.end());
  }

  VertexPatch patch;
  patch.center = z;
  patch.is_boundary = mesh.boundary_vertex[z] != 0;
  int t = first;
  for (std::size_t n = 0; n < incident.size(); ++n) {
    const int lz = mesh.local_vertex(t, z);
    const auto& tv = mesh.triangles[t].v;
    const int start = tv[(lz + 1) % 3], end = tv[(lz + 2) % 3];
    patch.triangles.push_back(t);
    patch.ray_vertices.push_back(start);
    const Point2 u = mesh.vertices[start] - mesh.vertices[z];
    const Point2 w = mesh.vertices[end] - mesh.vertices[z];
    const double cr = cross(u, w), dt = dot(u, w);
    patch.angles.push_back(std::atan2(cr, dt));
    const double h = std::hypot(cr, dt);
    patch.sin_angle.push_back(cr / h);
    patch.cos_angle.push_back(dt / h);
    patch.ray_dirs.push_back((1.0 / norm(u)) * u);
    auto it = by_start.find(end);
    if (it == by_start.end()) {
      if (n + 1 != incident.size()) {
        throw NonConformingError("vertex patch is not a single fan");
      }
      patch.ray_vertices.push_back(end);
      patch.ray_dirs.push_back((1.0 / norm(w)) * w);
      break;
    }
    t = it->second.tri;
  }
  if (patch.size() != static_cast<int>(incident.size())) {
    throw NonConformingError("vertex patch is not a single fan");
  }
  if (!patch.is_boundary && patch.ray_vertices.size() != patch.angles.size()) {
    throw NonConformingError("interior patch did not close");
  }
  return patch;
}

double shape_regularity(const Mesh& mesh) {
  double gamma = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tv = mesh.triangles[t].v;
    const double a = norm(mesh.vertices[tv[1]] - mesh.vertices[tv[0]]);
    const double b = norm(mesh.vertices[tv[2]] - mesh.vertices[tv[1]]);
    const double c = norm(mesh.vertices[tv[0]] - mesh.vertices[tv[2]]);
    const double rho = 4.0 * mesh.area(t) / (a + b + c);  // inscribed diameter
    if (rho <= 1e-300) throw DegenerateTriangleError("vanishing inscribed circle");
    gamma = std::max(gamma, std::max({a, b, c}) / rho);
  }
  return gamma;
}

double min_outer_angle(const Mesh& mesh) {
  double alpha = 2.0 * std::numbers::pi;
  bool found = false;
  for (int z = 0; z < mesh.n_vertices(); ++z) {
    if (!mesh.boundary_vertex[z]) continue;
    const VertexPatch patch = vertex_patch(mesh, z);
    alpha = std::min(alpha, 2.0 * std::numbers::pi - patch.angle_sum());
    found = true;
  }
  if (!found) throw NonConformingError("mesh has no boundary vertices");
  return alpha;
}

double min_angle(const Mesh& mesh) {
  double phi = std::numbers::pi;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    for (int m = 0; m < 3; ++m) {
      const Point2 p = mesh.vertex_of(t, m);
      const Point2 u = mesh.vertex_of(t, (m + 1) % 3) - p;
      const Point2 w = mesh.vertex_of(t, (m + 2) % 3) - p;
      phi = std::min(phi, std::atan2(cross(u, w), dot(u, w)));
    }
  }
  return phi;
}

Mesh read_mesh(std::istream& in) {
  int nv = 0, nt = 0;
  if (!(in >> nv >> nt) || nv <= 0 || nt <= 0) {
    throw ParseError("mesh header must be 'nv nt' with positive counts");
  }
  std::vector<Point2> vertices(nv);
  std::vector<int> flags(nv);
  for (int i = 0; i < nv; ++i) {
    if (!(in >> vertices[i].x >> vertices[i].y >> flags[i])) {
      throw ParseError("truncated vertex record " + std::to_string(i));
    }
    if (!std::isfinite(vertices[i].x) || !std::isfinite(vertices[i].y)) {
      throw ParseError("non-finite vertex coordinate");
    }
  }
  std::vector<std::array<int, 3>> tris(nt);
  for (int i = 0; i < nt; ++i) {
    if (!(in >> tris[i][0] >> tris[i][1] >> tris[i][2])) {
      throw ParseError("truncated triangle record " + std::to_string(i));
    }
  }
  Mesh mesh = build_mesh(std::move(vertices), std::move(tris));
  for (int i = 0; i < nv; ++i) {
    if ((flags[i] != 0) != (mesh.boundary_vertex[i] != 0)) {
      throw ParseError("boundary flag of vertex " + std::to_string(i) +
                       " does not match the derived flag");
    }
  }
  return mesh;
}

Mesh read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mesh file " + path);
  return read_mesh(in);
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
  out << mesh.n_vertices() << ' ' << mesh.n_triangles() << '\n';
  out.precision(17);
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    out << mesh.vertices[v].x << ' ' << mesh.vertices[v].y << ' '
        << int(mesh.boundary_vertex[v]) << '\n';
  }
  for (const Triangle& t : mesh.triangles) {
    out << t.v[0] << ' ' << t.v[1] << ' ' << t.v[2] << '\n';
  }
}

}  // namespace stokeswire
