#include <benchmark/benchmark.h>

#include <random>

#include "motivic/linalg.hpp"

using namespace motivic;

namespace {

Matrix random_matrix(int p, int n, unsigned seed) {
  std::mt19937 rng(seed);
  Matrix m(p, n, n);
  for (auto& r : m.rows)
    for (int j = 0; j < n; ++j) r.set(j, static_cast<int>(rng() % p));
  return m;
}

template <Echelon (*Reduce)(Matrix&, int)>
void run(benchmark::State& st) {
  const int p = static_cast<int>(st.range(0)), n = static_cast<int>(st.range(1));
  const Matrix m0 = random_matrix(p, n, 7);
  for (auto _ : st) {
    Matrix m = m0;
    auto e = Reduce(m, -1);
    benchmark::DoNotOptimize(e.rank);
  }
  st.SetComplexityN(n);
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int p : {2, 3})
    for (int n : {128, 256, 512, 1024}) b->Args({p, n});
}

}  // namespace

BENCHMARK(run<row_reduce>)->Name("row_reduce/parallel")->Apply(sizes)->Unit(benchmark::kMillisecond);
BENCHMARK(run<row_reduce_serial>)->Name("row_reduce/serial")->Apply(sizes)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
