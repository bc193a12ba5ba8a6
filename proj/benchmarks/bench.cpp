#include <benchmark/benchmark.h>

#include <Eigen/Core>

#include "coloc/instance.hpp"
#include "coloc/objective.hpp"
#include "coloc/rng.hpp"
#include "coloc/solvers.hpp"
#include "coloc/trellis.hpp"

using namespace coloc;

namespace {

struct Built {
  SyntheticInstance instance;
  TrellisDomain domain;
  QuadraticProblem problem;
};

Built build(int videos, int frames, int boxes, const ObjectiveParams& params = {}) {
  auto inst = generate(InstanceSpec::uniform(videos, frames, boxes, 8, 7));
  auto temporal = temporal_similarity(inst.geometry, inst.indexing);
  auto domain = TrellisDomain::build(inst.indexing, temporal, 0.0);
  auto problem = build_colocalization_problem(inst.features, inst.geometry, inst.saliency,
                                              inst.indexing, params);
  return Built{std::move(inst), std::move(domain), std::move(problem)};
}

Eigen::VectorXd random_cost(Rng& rng, int n) {
  Eigen::VectorXd c(n);
  for (int i = 0; i < n; ++i) c[i] = rng.uniform(-1.0, 1.0);
  return c;
}

void BM_Lmo(benchmark::State& state) {
  auto b = build(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
                 static_cast<int>(state.range(2)));
  Rng rng(3);
  const auto cost = random_cost(rng, b.domain.indexing().n_boxes);
  for (auto _ : state) {
    benchmark::DoNotOptimize(b.domain.lmo(cost));
  }
}
BENCHMARK(BM_Lmo)->Args({2, 5, 4})->Args({5, 20, 10})->Args({10, 30, 20});

void BM_ObjectiveBuild(benchmark::State& state) {
  auto inst = generate(InstanceSpec::uniform(static_cast<int>(state.range(0)),
                                             static_cast<int>(state.range(1)),
                                             static_cast<int>(state.range(2)), 8, 7));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_colocalization_problem(
        inst.features, inst.geometry, inst.saliency, inst.indexing, ObjectiveParams{}));
  }
}
BENCHMARK(BM_ObjectiveBuild)->Args({2, 5, 4})->Args({5, 20, 10})->Unit(benchmark::kMillisecond);

void BM_Gradient(benchmark::State& state) {
  auto b = build(5, 20, 10);
  Rng rng(5);
  const auto y = b.domain.lmo(random_cost(rng, b.domain.indexing().n_boxes))
                     .to_dense(b.domain.indexing());
  for (auto _ : state) {
    benchmark::DoNotOptimize(b.problem.gradient(y));
  }
}
BENCHMARK(BM_Gradient);

void BM_ExactLineSearch(benchmark::State& state) {
  auto b = build(5, 20, 10);
  Rng rng(7);
  const auto& ix = b.domain.indexing();
  const auto y = b.domain.lmo(random_cost(rng, ix.n_boxes)).to_dense(ix);
  const auto d = b.domain.lmo(random_cost(rng, ix.n_boxes)).to_dense(ix) - y;
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_line_search(b.problem, y, d, 1.0));
  }
}
BENCHMARK(BM_ExactLineSearch);

void BM_InnerProcedure(benchmark::State& state) {
  auto b = build(5, 20, 10);
  Rng rng(9);
  const auto& ix = b.domain.indexing();
  const auto u = b.domain.lmo(random_cost(rng, ix.n_boxes)).to_dense(ix);
  const auto g = random_cost(rng, ix.n_boxes);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fw_procedure(g, u, 2.0, 1e-3, b.domain, 100));
  }
}
BENCHMARK(BM_InnerProcedure)->Unit(benchmark::kMicrosecond);

void BM_Solve(benchmark::State& state) {
  static const char* names[] = {"fw", "afw", "pairfw", "cgs", "acgs", "pcgs"};
  auto b = build(2, 5, 4);
  SolverConfig cfg;
  cfg.epsilon = 1e-4;
  cfg.max_iters = 500;
  cfg.beta_scale = 1.0;
  cfg.eta_scale = 1e-3;
  cfg.inner_max_iters = 100;
  const char* name = names[state.range(0)];
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(name, b.problem, b.domain, cfg));
  }
  state.SetLabel(name);
}
BENCHMARK(BM_Solve)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
