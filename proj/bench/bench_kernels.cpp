#include <benchmark/benchmark.h>

#include <random>

#include "sweep/potential.hpp"

using namespace sweep;

namespace {

const Point kOrigin{0, 0, 0};

RasterDomain disk(int cells) { return RasterDomain::ball(GridSpec::cube(Dimension(2), -1.0, 1.0, cells), kOrigin, 1.0); }

std::vector<Point> points(int n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) out.push_back({u(rng), u(rng), 0.0});
  return out;
}

Measure source() { return uniform_ball(kOrigin, 0.5, disk(128)) + uniform_sphere(Dimension(2), kOrigin, 0.6, 512); }

void BM_potential_batch(benchmark::State& st) {
  const Measure mu = source();
  const auto xs = points(int(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(potential_batch(mu, xs));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_potential_batch_reference(benchmark::State& st) {
  const Measure mu = source();
  const auto xs = points(int(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::potential_batch(mu, xs));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

Measure energy_source() { return uniform_sphere(Dimension(3), kOrigin, 0.5, 2048); }

void BM_energy(benchmark::State& st) {
  const Measure mu = energy_source();
  for (auto _ : st) benchmark::DoNotOptimize(energy(mu));
}

void BM_energy_reference(benchmark::State& st) {
  const Measure mu = energy_source();
  for (auto _ : st) benchmark::DoNotOptimize(reference::energy(mu, SelfTerms::Included));
}

GridFunction riesz_input() {
  return GridFunction::sample(disk(257), [](const Point& x) { return norm2(x) + x[0] * x[0] * x[0]; });
}

void BM_riesz(benchmark::State& st) {
  const GridFunction u = riesz_input();
  for (auto _ : st) benchmark::DoNotOptimize(riesz_measure(u));
}

void BM_riesz_reference(benchmark::State& st) {
  const GridFunction u = riesz_input();
  for (auto _ : st) benchmark::DoNotOptimize(reference::riesz_measure(u));
}

struct SolveInput {
  GridFunction u;
  RasterSet sub;
};

SolveInput solve_input() {
  const RasterDomain dom = disk(129);
  return {GridFunction::sample(dom, [](const Point& x) { return K(Dimension(2), kOrigin, x); }),
          RasterSet::from_centers(dom.grid(), [](const Point& x) { return norm2(x) < 0.36; })};
}

void BM_dirichlet(benchmark::State& st) {
  const SolveInput in = solve_input();
  for (auto _ : st) benchmark::DoNotOptimize(harmonic_lift(in.u, in.sub));
}

void BM_dirichlet_reference(benchmark::State& st) {
  const SolveInput in = solve_input();
  const GridFunction boundary = [&] {
    std::vector<double> v = in.u.values;
    for (std::size_t i : solver_unknowns(in.sub, in.u.domain).indices()) v[i] = 0.0;
    return GridFunction(in.u.domain, v);
  }();
  for (auto _ : st) benchmark::DoNotOptimize(reference::dirichlet_solve(in.sub, boundary));
}

}  // namespace

BENCHMARK(BM_potential_batch)->Arg(1024)->Arg(8192);
BENCHMARK(BM_potential_batch_reference)->Arg(1024)->Arg(8192);
BENCHMARK(BM_energy);
BENCHMARK(BM_energy_reference);
BENCHMARK(BM_riesz);
BENCHMARK(BM_riesz_reference);
BENCHMARK(BM_dirichlet);
BENCHMARK(BM_dirichlet_reference);

BENCHMARK_MAIN();
