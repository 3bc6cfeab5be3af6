// Microbenchmarks for the hot paths: hull construction, exact integration,
// witness steps, and one search restart.

#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <vector>

#include "flatnewt/concave.hpp"
#include "flatnewt/functional.hpp"
#include "flatnewt/geom2d.hpp"
#include "flatnewt/hull3d.hpp"
#include "flatnewt/kbound.hpp"

using namespace flatnewt;

namespace {

std::shared_ptr<const Domain> shared_dom(Domain d) {
  return std::make_shared<const Domain>(std::move(d));
}

std::vector<Point3> random_cloud(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> c(0.0, 1.0);
  std::vector<Point3> pts(n);
  for (Point3& p : pts) p = {c(rng), c(rng), c(rng)};
  return pts;
}

void BM_convex_hull(benchmark::State& state) {
  auto pts = random_cloud(static_cast<int>(state.range(0)), 42);
  for (auto _ : state) benchmark::DoNotOptimize(convex_hull_3d(pts));
}

void BM_hull_function_on_disk(benchmark::State& state) {
  auto dom = shared_dom(gen::disk(1.0, static_cast<int>(state.range(0))));
  std::vector<Apex> apexes = {{{0.2, 0.1}, 1.0}, {{-0.3, -0.2}, 0.7}};
  for (auto _ : state) benchmark::DoNotOptimize(HullFunction::build(dom, apexes));
}

void BM_dirichlet_split(benchmark::State& state) {
  auto dom = shared_dom(gen::disk(1.0, static_cast<int>(state.range(0))));
  HullFunction u = HullFunction::build(dom, {{{0.2, 0.1}, 1.0}, {{-0.3, -0.2}, 0.7}});
  for (auto _ : state) benchmark::DoNotOptimize(dirichlet_split(u));
}

void BM_witness_step(benchmark::State& state) {
  auto dom = shared_dom(gen::disk());
  WitnessParams params{0.1, 1e-3};
  for (auto _ : state) benchmark::DoNotOptimize(make_witness(dom, params));
}

void BM_estimate_restart(benchmark::State& state) {
  auto dom = shared_dom(gen::diamond());
  SearchBudget budget{1, static_cast<int>(state.range(0)), {2}};
  for (auto _ : state) benchmark::DoNotOptimize(estimate_K(dom, budget, 7));
}

BENCHMARK(BM_convex_hull)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_hull_function_on_disk)->Arg(128)->Arg(512);
BENCHMARK(BM_dirichlet_split)->Arg(128)->Arg(512);
BENCHMARK(BM_witness_step);
BENCHMARK(BM_estimate_restart)->Arg(20)->Arg(60);

}  // namespace

BENCHMARK_MAIN();
