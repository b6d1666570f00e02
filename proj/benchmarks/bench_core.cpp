#include <benchmark/benchmark.h>

#include "stokeswire/assembly.hpp"
#include "stokeswire/manufactured.hpp"
#include "stokeswire/singularity.hpp"
#include "stokeswire/solve.hpp"

using namespace stokeswire;

namespace {

Mesh benchmark_mesh(int refinements) {
  Mesh mesh = criss_cross_mesh(0.01);
  for (int i = 0; i < refinements; ++i) mesh = red_refine(mesh);
  return mesh;
}

void BM_RedRefine(benchmark::State& state) {
  const Mesh mesh = benchmark_mesh(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(red_refine(mesh));
  }
}
BENCHMARK(BM_RedRefine)->Arg(2)->Arg(4);

void BM_ThetaScan(benchmark::State& state) {
  const Mesh mesh = benchmark_mesh(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(singularity_report(mesh, 0.0));
  }
}
BENCHMARK(BM_ThetaScan)->Arg(2)->Arg(4);

void BM_AssembleStiffness(benchmark::State& state) {
  const int k = 4;
  const Mesh mesh = benchmark_mesh(static_cast<int>(state.range(0)));
  const VelocityDofMap vmap = build_velocity_space(mesh, k);
  const ReferenceBasis basis(k);
  const QuadratureRule rule = gauss_triangle(2 * k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_stiffness(mesh, vmap, basis, rule));
  }
}
BENCHMARK(BM_AssembleStiffness)->Arg(1)->Arg(3);

void BM_SolveStokes(benchmark::State& state) {
  const int k = 4;
  const Mesh mesh = benchmark_mesh(static_cast<int>(state.range(0)));
  const ManufacturedSolution exact;
  const VelocityDofMap vmap = build_velocity_space(mesh, k);
  const PressureDofMap pmap = build_pressure_space(mesh, k);
  const ConstraintSet constraints = build_constraints_for_vertices(mesh, pmap, {4});
  const SaddleSystem sys = build_saddle_system(
      mesh, vmap, pmap, constraints, [&](Point2 x) { return exact.force(x); },
      gauss_triangle(2 * k), gauss_triangle(2 * k + 8));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_stokes(sys));
  }
}
BENCHMARK(BM_SolveStokes)->Arg(1)->Arg(2);

void BM_InfSupEstimate(benchmark::State& state) {
  const int k = 4;
  const Mesh mesh = benchmark_mesh(1);
  const VelocityDofMap vmap = build_velocity_space(mesh, k);
  const PressureDofMap pmap = build_pressure_space(mesh, k);
  const ConstraintSet constraints = build_constraints_for_vertices(mesh, pmap, {4});
  const SaddleSystem sys = build_saddle_system(
      mesh, vmap, pmap, constraints,
      [](Point2) { return std::array<double, 2>{0.0, 0.0}; },
      gauss_triangle(2 * k), gauss_triangle(2 * k));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_infsup(sys));
  }
}
BENCHMARK(BM_InfSupEstimate);

}  // namespace

BENCHMARK_MAIN();
