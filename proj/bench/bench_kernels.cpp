// Serial reference kernels against the OpenMP ones on the shift operators of
// the faithful representation.

#include <benchmark/benchmark.h>

#include "qball/representation.hpp"

namespace {

qball::SparseOperator shift_for(int n, int cutoff) {
  auto g = std::make_shared<const qball::DirectedGraph>(qball::ball_graph(n));
  auto space = std::make_shared<const qball::TruncatedPathSpace>(g, 0, cutoff);
  const auto gens = qball::build_generators(space);
  return qball::weighted_shift(gens, n, qball::QParam(0.5));
}

template <auto Multiply>
void BM_Multiply(benchmark::State& state) {
  const auto z = shift_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto a = qball::sparse::adjoint(z.matrix());
  for (auto _ : state) benchmark::DoNotOptimize(Multiply(a, z.matrix()));
  state.counters["dim"] = z.dimension();
}

template <auto Norms>
void BM_ColumnNorms(benchmark::State& state) {
  const auto z = shift_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  std::vector<int> cols(static_cast<std::size_t>(z.dimension()));
  for (int i = 0; i < z.dimension(); ++i) cols[i] = i;
  for (auto _ : state) benchmark::DoNotOptimize(Norms(z.matrix(), cols));
}

}  // namespace

BENCHMARK(BM_Multiply<qball::sparse::serial::multiply>)->Name("multiply/serial")->Args({3, 6})->Args({4, 6})->Args({4, 10});
BENCHMARK(BM_Multiply<qball::sparse::parallel::multiply>)->Name("multiply/parallel")->Args({3, 6})->Args({4, 6})->Args({4, 10});
BENCHMARK(BM_ColumnNorms<qball::sparse::serial::column_norms>)->Name("column_norms/serial")->Args({4, 6})->Args({4, 10});
BENCHMARK(BM_ColumnNorms<qball::sparse::parallel::column_norms>)->Name("column_norms/parallel")->Args({4, 6})->Args({4, 10});

BENCHMARK_MAIN();
