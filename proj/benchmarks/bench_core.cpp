#include <memory>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "yo/bubbles.hpp"
#include "yo/functionals.hpp"
#include "yo/mesh.hpp"

using namespace yo;

namespace {

struct Fixture {
  SimplicialMesh mesh;
  AssembledProblem prob;
  Vector rough;
};

const Fixture& fixture(int level) {
  static std::vector<std::unique_ptr<Fixture>> cache(kMaxRefinementLevel + 1);
  auto& slot = cache[static_cast<std::size_t>(level)];
  if (!slot) {
    auto mesh = build_ball_mesh(level);
    auto prob = assemble(mesh, MetricData::flat_ball(mesh));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(0.1, 1.1);
    Vector u(mesh.vertex_count());
    for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = U(rng);
    slot = std::make_unique<Fixture>(Fixture{std::move(mesh), std::move(prob), std::move(u)});
  }
  return *slot;
}

void BM_BuildMesh(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_ball_mesh(level));
}
BENCHMARK(BM_BuildMesh)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& state) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  const auto md = MetricData::flat_ball(f.mesh);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(f.mesh, md));
  state.counters["dofs"] = static_cast<double>(f.mesh.vertex_count());
}
BENCHMARK(BM_Assemble)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

// Obstacle solve from a cold start on a rough field (many active constraints).
void BM_ObstacleRough(benchmark::State& state) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  ObstacleOptions opts;
  opts.warm_start = Vector::Zero(f.rough.size());
  int iterations = 0;
  for (auto _ : state) {
    auto s = obstacle_map(f.prob.form, f.prob.boundary, f.rough, opts);
    iterations = s.iterations;
    benchmark::DoNotOptimize(s.state.data());
  }
  state.counters["pdas_iterations"] = iterations;
}
BENCHMARK(BM_ObstacleRough)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

// The warm-started T-solve a minimize step performs near a smooth state.
void BM_ObstacleBubble(benchmark::State& state) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  const Vector b = bubble_field(f.mesh, BubbleParams{Point(0, 0, 3), 1.0}).values();
  for (auto _ : state) benchmark::DoNotOptimize(obstacle_map(f.prob.form, f.prob.boundary, b).state.data());
}
BENCHMARK(BM_ObstacleBubble)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_QuotientGradient(benchmark::State& state) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(quotient_gradient(f.prob.form, f.prob.boundary, f.rough, 3.0).data());
}
BENCHMARK(BM_QuotientGradient)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);

// A few descent steps from a perturbed constant state.
void BM_MinimizeSteps(benchmark::State& state) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  Vector u(f.mesh.vertex_count());
  for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = 1.0 + 0.1 * f.mesh.vertices[static_cast<std::size_t>(i)].x();
  MinimizeOptions mo;
  mo.max_iters = 5;
  for (auto _ : state) benchmark::DoNotOptimize(minimize(f.prob.form, f.prob.boundary, 3.0, u, mo).report.E_value);
}
BENCHMARK(BM_MinimizeSteps)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
