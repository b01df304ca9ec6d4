// Copyright 2026 The minplus Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "minplus/polyring.hpp"

namespace {

using namespace minplus;

IntMatrix random_exponents(std::mt19937_64& gen, std::size_t rows, std::size_t cols, Value hi) {
  std::uniform_int_distribution<Value> dist(0, hi);
  IntMatrix m(rows, cols);
  for (auto& v : m.data()) v = dist(gen);
  return m;
}

void BM_MonomialProduct(benchmark::State& state, RingStrategy strategy) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto q = static_cast<std::size_t>(state.range(1));
  std::mt19937_64 gen(42);
  const IntMatrix a = random_exponents(gen, n, n, 4 * static_cast<Value>(q));
  const IntMatrix b = random_exponents(gen, n, n, 4 * static_cast<Value>(q));
  const MonomialSet l(a.data(), q), r(b.data(), q);
  for (auto _ : state) {
    benchmark::DoNotOptimize(monomial_matrix_product(l, r, n, n, n, {PrimeField{}, strategy}));
  }
}
BENCHMARK_CAPTURE(BM_MonomialProduct, sparse, RingStrategy::kSparse)
    ->Args({16, 101})->Args({32, 101})->Args({32, 1009})->Args({64, 1009});
BENCHMARK_CAPTURE(BM_MonomialProduct, frequency, RingStrategy::kFrequency)
    ->Args({16, 101})->Args({32, 101})->Args({32, 1009});

void BM_Bivariate(benchmark::State& state, RingStrategy strategy) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto q = static_cast<std::size_t>(state.range(1));
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<Value> dist(0, 4 * static_cast<Value>(q));
  std::vector<Value> ea(n), eb(n);
  for (auto& v : ea) v = dist(gen);
  for (auto& v : eb) v = dist(gen);
  const auto l = BivariatePoly::monomials(ea, q);
  const auto r = BivariatePoly::monomials(eb, q);
  for (auto _ : state) benchmark::DoNotOptimize(bivariate_mul(l, r, {PrimeField{}, strategy}));
}
BENCHMARK_CAPTURE(BM_Bivariate, sparse, RingStrategy::kSparse)->Args({64, 101})->Args({256, 1009});
BENCHMARK_CAPTURE(BM_Bivariate, frequency, RingStrategy::kFrequency)->Args({64, 101})->Args({256, 101});

}  // namespace

BENCHMARK_MAIN();
