// Serial vs OpenMP arm sweeps on random arm sets of growing size.

#include <benchmark/benchmark.h>

#include "lazyts/kernels.hpp"
#include "lazyts/rng.hpp"

namespace {

using namespace lazyts;

struct Fixture {
  ArmMatrix arms;
  Vector theta;
  DenseMatrix inverse;
  Vector out;
};

Fixture make_fixture(long k, int d) {
  RandomStream rng(42, StreamId::kDiagnostics);
  Fixture f;
  f.arms.resize(k, d);
  for (long i = 0; i < k; ++i)
    for (int j = 0; j < d; ++j) f.arms(i, j) = rng.next_gaussian();
  f.theta = Vector::Zero(d);
  for (int j = 0; j < d; ++j) f.theta(j) = rng.next_gaussian();
  DenseMatrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = rng.next_gaussian();
  f.inverse = m * m.transpose() + DenseMatrix::Identity(d, d);
  f.out.resize(k);
  return f;
}

template <bool Parallel>
void BM_MinGapRatio(benchmark::State& state) {
  const auto f = make_fixture(state.range(0), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    auto r = Parallel ? kernels::omp::min_gap_ratio(f.arms, 0, f.theta, f.inverse)
                      : kernels::serial::min_gap_ratio(f.arms, 0, f.theta, f.inverse);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_TopTwo(benchmark::State& state) {
  const auto f = make_fixture(state.range(0), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    auto r = Parallel ? kernels::omp::top_two_inner(f.arms, f.theta)
                      : kernels::serial::top_two_inner(f.arms, f.theta);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_SquaredProjections(benchmark::State& state) {
  auto f = make_fixture(state.range(0), static_cast<int>(state.range(1)));
  for (auto _ : state) {
    if (Parallel) {
      kernels::omp::squared_projections(f.arms, f.theta, f.out);
    } else {
      kernels::serial::squared_projections(f.arms, f.theta, f.out);
    }
    benchmark::DoNotOptimize(f.out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void sizes(benchmark::internal::Benchmark* b) {
  for (long k : {1000L, 5000L, 50000L, 500000L}) b->Args({k, 2})->Args({k, 8});
}

}  // namespace

BENCHMARK(BM_MinGapRatio<false>)->Apply(sizes);
BENCHMARK(BM_MinGapRatio<true>)->Apply(sizes);
BENCHMARK(BM_TopTwo<false>)->Apply(sizes);
BENCHMARK(BM_TopTwo<true>)->Apply(sizes);
BENCHMARK(BM_SquaredProjections<false>)->Apply(sizes);
BENCHMARK(BM_SquaredProjections<true>)->Apply(sizes);

BENCHMARK_MAIN();
