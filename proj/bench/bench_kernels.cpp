// Copyright 2026 The pmw Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <bit>
#include <random>
#include <vector>

#include "pmw/kernels.hpp"

namespace {

using namespace pmw;

// Rank function of U_{n/2,n}: a valid polymatroid, so every kernel scans
// the whole lattice instead of stopping early.
std::vector<double> uniform_rank(int n) {
  std::vector<double> f(std::size_t{1} << n);
  for (std::uint32_t m = 0; m < f.size(); ++m) f[m] = std::min(std::popcount(m), n / 2);
  return f;
}

struct Table {
  std::vector<std::int32_t> values;
  std::vector<double> probs;
  DistributionTable view(int n) const { return {n, values, probs}; }
};

Table random_table(int n, int rows) {
  std::mt19937_64 rng(7);
  Table t;
  for (int r = 0; r < rows; ++r) {
    for (int i = 0; i < n; ++i) t.values.push_back(static_cast<std::int32_t>(rng() % 3));
    t.probs.push_back(1.0 / rows);
  }
  return t;
}

// The port of U_{k,n} at element 0 is the (k, n-1)-threshold.
std::vector<std::uint8_t> threshold(int participants, int k) {
  std::vector<std::uint8_t> q(std::size_t{1} << participants);
  for (std::uint32_t m = 0; m < q.size(); ++m) q[m] = std::popcount(m) >= k;
  return q;
}

template <auto Kernel>
void BM_validate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<double> f = uniform_rank(n);
  for (auto _ : state) {
    auto v = Kernel(std::span<const double>(f), n, 1e-9);
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}

template <auto Kernel>
void BM_entropy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Table t = random_table(n, 4096);
  for (auto _ : state) {
    auto h = Kernel(t.view(n));
    benchmark::DoNotOptimize(h);
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}

template <auto Kernel>
void BM_realizes(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<double> f = uniform_rank(n);
  const std::vector<std::uint8_t> q = threshold(n - 1, n / 2);
  for (auto _ : state) {
    auto r = Kernel(std::span<const double>(f), n, 0, std::span<const std::uint8_t>(q), 1e-9);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(q.size()));
}

BENCHMARK(BM_validate<kernels::serial::elemental_violations<double>>)
    ->Name("validate/serial")->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_validate<kernels::parallel::elemental_violations<double>>)
    ->Name("validate/parallel")->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_entropy<kernels::serial::marginal_entropies>)
    ->Name("entropy/serial")->DenseRange(6, 12, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_entropy<kernels::parallel::marginal_entropies>)
    ->Name("entropy/parallel")->DenseRange(6, 12, 3)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_realizes<kernels::serial::first_realization_failure<double>>)
    ->Name("realizes/serial")->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_realizes<kernels::parallel::first_realization_failure<double>>)
    ->Name("realizes/parallel")->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
