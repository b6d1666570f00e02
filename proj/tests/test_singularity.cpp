#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "stokeswire/errors.hpp"
#include "stokeswire/singularity.hpp"

using namespace stokeswire;

namespace {

// independent route: angles from atan2, pair sums through std::sin
double theta_oracle(const VertexPatch& patch) {
  const int n = patch.size();
  if (patch.is_boundary && n == 1) return 0.0;
  const int pairs = patch.is_boundary ? n - 1 : n;
  double theta = 0.0;
  for (int i = 0; i < pairs; ++i) {
    theta = std::max(
        theta, std::abs(std::sin(patch.angles[i] + patch.angles[(i + 1) % n])));
  }
  return theta;
}

}  // namespace

TEST_CASE("singularity measure on the criss-cross family") {
  const Mesh exact = criss_cross_mesh(0.0);
  CHECK(theta_of_vertex(vertex_patch(exact, 4)) <= 1e-15);
  // corners: two sectors of pi/4 each, so the pair sum is pi/2
  for (int corner : {0, 1, 2, 3}) {
    CHECK(theta_of_vertex(vertex_patch(exact, corner)) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }

  const Mesh perturbed = criss_cross_mesh(0.01);
  const double theta = theta_of_vertex(vertex_patch(perturbed, 4));
  CHECK(theta == doctest::Approx(0.02).epsilon(0.05));
}

TEST_CASE("measure agrees with the direct-angle oracle") {
  std::mt19937 rng(5);
  for (double eps : {0.0, 0.01, 1e-4, 1e-6, 1e-8}) {
    const Mesh mesh = red_refine(criss_cross_mesh(eps));
    for (int z = 0; z < mesh.n_vertices(); ++z) {
      const VertexPatch patch = vertex_patch(mesh, z);
      CHECK(theta_of_vertex(patch) ==
            doctest::Approx(theta_oracle(patch)).epsilon(1e-10));
    }
  }
  for (int n : {3, 4, 5, 6, 7}) {
    const Mesh fan = oracles::make_fan_mesh(rng, n);
    for (int z = 0; z < fan.n_vertices(); ++z) {
      const VertexPatch patch = vertex_patch(fan, z);
      CHECK(theta_of_vertex(patch) ==
            doctest::Approx(theta_oracle(patch)).epsilon(1e-10));
    }
  }
}

TEST_CASE("boundary vertex with one triangle measures zero") {
  const Mesh one = build_mesh({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
  for (int z : {0, 1, 2}) {
    CHECK(theta_of_vertex(vertex_patch(one, z)) == 0.0);
  }
}

TEST_CASE("eta-critical sets") {
  const Mesh exact = criss_cross_mesh(0.0);
  CHECK(eta_critical_set(exact, 0.0) == std::vector<int>{4});

  const Mesh perturbed = criss_cross_mesh(0.01);
  CHECK(eta_critical_set(perturbed, 0.0).empty());
  CHECK(eta_critical_set(perturbed, 0.05) == std::vector<int>{4});

  // monotonicity of the critical set in eta
  const Mesh fine = red_refine(perturbed);
  std::vector<double> etas = {0.0, 0.01, 0.05, 0.3, 0.8, 1.0};
  for (std::size_t i = 0; i + 1 < etas.size(); ++i) {
    const auto small = eta_critical_set(fine, etas[i]);
    const auto large = eta_critical_set(fine, etas[i + 1]);
    CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  }
}

TEST_CASE("theta_min") {
  // exhaustive-scan oracle on the perturbed mesh
  const Mesh perturbed = criss_cross_mesh(0.01);
  double best = 2.0;
  for (int z = 0; z < perturbed.n_vertices(); ++z) {
    const double t = theta_oracle(vertex_patch(perturbed, z));
    if (t > 0.0) best = std::min(best, t);
  }
  CHECK(theta_min(perturbed) == doctest::Approx(best).epsilon(1e-12));
  CHECK(theta_min(perturbed) == doctest::Approx(0.02).epsilon(0.05));

  // every vertex of a single triangle has measure zero
  const Mesh one = build_mesh({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
  CHECK_THROWS_AS(theta_min(one), AllSingularError);

  // refinement introduces positive-measure vertices
  CHECK(theta_min(red_refine(criss_cross_mesh(0.0))) > 0.0);
}

TEST_CASE("alternating functional") {
  const Mesh mesh = criss_cross_mesh(0.0);
  const VertexPatch patch = vertex_patch(mesh, 4);
  const double c = 2.75;
  CHECK(alternating_functional(patch, std::vector<double>{c, c, c, c}) == 0.0);
  CHECK(alternating_functional(patch, std::vector<double>{1, 2, 3, 4}) == 2.0);
  CHECK(alternating_functional(patch, std::vector<double>{1, 2, 2, 1}) == 0.0);
  CHECK_THROWS_AS(alternating_functional(patch, std::vector<double>{1, 2}),
                  LengthMismatchError);
}

TEST_CASE("alternating functional is linear and bounded by the trace sum") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> value(-5.0, 5.0);
  const Mesh mesh = criss_cross_mesh(0.2);
  const VertexPatch patch = vertex_patch(mesh, 4);
  for (int it = 0; it < 100; ++it) {
    std::vector<double> q(4), r(4);
    for (int i = 0; i < 4; ++i) {
      q[i] = value(rng);
      r[i] = value(rng);
    }
    const double a = value(rng), b = value(rng);
    std::vector<double> mix(4);
    for (int i = 0; i < 4; ++i) mix[i] = a * q[i] + b * r[i];
    CHECK(alternating_functional(patch, mix) ==
          doctest::Approx(a * alternating_functional(patch, q) +
                          b * alternating_functional(patch, r))
              .epsilon(1e-12));
    double abs_sum = 0.0;
    for (double v : q) abs_sum += std::abs(v);
    CHECK(std::abs(alternating_functional(patch, q)) <= abs_sum + 1e-12);
  }
}

TEST_CASE("measure is invariant under rigid motion and scaling") {
  const double phi = 0.73, scale = 3.2, dx = -1.4, dy = 2.1;
  const Mesh base = criss_cross_mesh(0.01);
  std::vector<Point2> moved;
  for (Point2 p : base.vertices) {
    moved.push_back({scale * (std::cos(phi) * p.x - std::sin(phi) * p.y) + dx,
                     scale * (std::sin(phi) * p.x + std::cos(phi) * p.y) + dy});
  }
  std::vector<std::array<int, 3>> tris;
  for (const Triangle& t : base.triangles) tris.push_back(t.v);
  const Mesh transformed = build_mesh(std::move(moved), std::move(tris));
  for (int z = 0; z < base.n_vertices(); ++z) {
    CHECK(theta_of_vertex(vertex_patch(base, z)) ==
          doctest::Approx(theta_of_vertex(vertex_patch(transformed, z)))
              .epsilon(1e-11));
  }
}

TEST_CASE("measure is invariant under cyclic renumbering") {
  const Mesh base = criss_cross_mesh(0.07);
  std::vector<std::array<int, 3>> tris;
  for (const Triangle& t : base.triangles) tris.push_back(t.v);
  for (int shift = 1; shift < 4; ++shift) {
    std::vector<std::array<int, 3>> rotated;
    for (int i = 0; i < 4; ++i) rotated.push_back(tris[(i + shift) % 4]);
    const Mesh permuted = build_mesh(base.vertices, rotated);
    CHECK(theta_of_vertex(vertex_patch(permuted, 4)) ==
          doctest::Approx(theta_of_vertex(vertex_patch(base, 4)))
              .epsilon(1e-13));
  }
}

TEST_CASE("four-triangle patch is singular exactly when two lines cross") {
  // rays at phi, psi, phi+pi, psi+pi: an exact crossing
  const double phi = 0.4, psi = 1.7;
  std::vector<Point2> v = {{0, 0}};
  for (double a : {phi, psi, phi + std::numbers::pi, psi + std::numbers::pi}) {
    v.push_back({1.3 * std::cos(a), 1.3 * std::sin(a)});
  }
  const Mesh crossing =
      build_mesh(v, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}});
  CHECK(theta_of_vertex(vertex_patch(crossing, 0)) <= 1e-15);

  v[3] = {1.3 * std::cos(phi + std::numbers::pi + 0.05),
          1.3 * std::sin(phi + std::numbers::pi + 0.05)};
  const Mesh bent = build_mesh(v, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}});
  CHECK(theta_of_vertex(vertex_patch(bent, 0)) > 0.01);
}

TEST_CASE("singularity report and csv dump") {
  const Mesh mesh = criss_cross_mesh(0.01);
  const SingularityReport report = singularity_report(mesh, 0.05);
  CHECK(report.theta.size() == 5);
  CHECK(report.critical == std::vector<int>{4});
  CHECK(report.theta_min == doctest::Approx(0.02).epsilon(0.05));
  CHECK(!report.all_singular);

  std::stringstream csv;
  write_theta_csv(csv, mesh);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "vertex_id,x,y,n_z,is_boundary,theta");
  int lines = 0;
  for (std::string line; std::getline(csv, line);) ++lines;
  CHECK(lines == 5);
}
