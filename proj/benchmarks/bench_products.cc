// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "minplus/convolution.hpp"
#include "minplus/product_col.hpp"
#include "minplus/product_row.hpp"

namespace {

using namespace minplus;

IntMatrix free_matrix(std::mt19937_64& gen, std::size_t n, Value u) {
  std::uniform_int_distribution<Value> dist(1, u);
  IntMatrix m(n, n);
  for (auto& v : m.data()) v = dist(gen);
  return m;
}

IntMatrix row_monotone(std::mt19937_64& gen, std::size_t n, Value u) {
  IntMatrix m = free_matrix(gen, n, u);
  for (std::size_t i = 0; i < n; ++i) std::sort(m.row(i).begin(), m.row(i).end());
  return m;
}

void BM_Row(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Value u = state.range(1);
  std::mt19937_64 gen(1);
  const IntMatrix a = free_matrix(gen, n, u), b = row_monotone(gen, n, u);
  SolverConfig cfg;
  cfg.fast_shared_modulus = state.range(2) != 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(minplus_monotone_row(a, b, {Axis::kRowMonotone, u}, cfg));
}
BENCHMARK(BM_Row)
    ->Args({16, 16, 0})->Args({32, 32, 0})->Args({48, 48, 0})->Args({64, 64, 0})
    ->Args({64, 1000, 0})->Args({64, 1000, 1})
    ->Unit(benchmark::kMillisecond);

void BM_Col(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Value u = state.range(1);
  std::mt19937_64 gen(2);
  const IntMatrix a = free_matrix(gen, n, u), b = row_monotone(gen, n, u).transposed();
  SolverConfig cfg;
  cfg.col_engine = state.range(2) != 0 ? ColEngine::kTwoPointer : ColEngine::kVerify;
  for (auto _ : state)
    benchmark::DoNotOptimize(minplus_monotone_col(a, b, {Axis::kColumnMonotone, u}, cfg));
}
BENCHMARK(BM_Col)
    ->Args({32, 32, 0})->Args({32, 32, 1})->Args({64, 64, 0})->Args({64, 64, 1})
    ->Unit(benchmark::kMillisecond);

void BM_Naive(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 gen(3);
  const IntMatrix a = free_matrix(gen, n, 64), b = row_monotone(gen, n, 64);
  for (auto _ : state) benchmark::DoNotOptimize(minplus_product_naive(a, b));
}
BENCHMARK(BM_Naive)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Conv(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Value u = state.range(1);
  std::mt19937_64 gen(4);
  std::uniform_int_distribution<Value> dist(1, u);
  std::vector<Value> va(n), vb(n);
  for (auto& v : va) v = dist(gen);
  for (auto& v : vb) v = dist(gen);
  std::sort(va.begin(), va.end());
  std::sort(vb.begin(), vb.end());
  const IntArray a(va), b(vb);
  for (auto _ : state)
    benchmark::DoNotOptimize(minplus_conv_monotone(a, b, {Axis::kArrayMonotone, u}));
}
BENCHMARK(BM_Conv)->Args({64, 64})->Args({256, 256})->Args({1024, 1024})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
