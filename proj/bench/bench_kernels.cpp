// Copyright 2026 The Ranklabel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>
#include <span>
#include <vector>

#include "ranklabel/kernels.hpp"

namespace {

using namespace ranklabel::kernels;

std::vector<double> random_column(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

struct Columns {
  explicit Columns(std::size_t n) {
    for (unsigned j = 0; j < 4; ++j) data.push_back(random_column(n, j));
    for (const auto& c : data) views.emplace_back(c);
  }
  std::vector<std::vector<double>> data;
  std::vector<std::span<const double>> views;
  std::vector<double> weights = {1.0, 0.5, -0.25, 0.3};
};

template <bool Parallel>
void BM_WeightedSum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Columns cols(n);
  std::vector<double> out(n);
  for (auto _ : state) {
    if constexpr (Parallel) {
      parallel::weighted_sum(cols.views, cols.weights, out);
    } else {
      serial::weighted_sum(cols.views, cols.weights, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_AffineMap(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto in = random_column(n, 11);
  std::vector<double> out(n);
  for (auto _ : state) {
    if constexpr (Parallel) {
      parallel::affine_map(in, 0.1, 2.0, out);
    } else {
      serial::affine_map(in, 0.1, 2.0, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_Histogram(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto in = random_column(n, 12);
  std::vector<double> edges;
  for (int i = 0; i <= 20; ++i) edges.push_back(-4.0 + 0.4 * i);
  for (auto _ : state) {
    auto counts = Parallel ? parallel::histogram_counts(in, edges)
                           : serial::histogram_counts(in, edges);
    benchmark::DoNotOptimize(counts.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_WeightedSum<false>)->Name("weighted_sum/serial")->Range(1 << 10, 1 << 20);
BENCHMARK(BM_WeightedSum<true>)->Name("weighted_sum/parallel")->Range(1 << 10, 1 << 20);
BENCHMARK(BM_AffineMap<false>)->Name("affine_map/serial")->Range(1 << 10, 1 << 20);
BENCHMARK(BM_AffineMap<true>)->Name("affine_map/parallel")->Range(1 << 10, 1 << 20);
BENCHMARK(BM_Histogram<false>)->Name("histogram_counts/serial")->Range(1 << 10, 1 << 20);
BENCHMARK(BM_Histogram<true>)->Name("histogram_counts/parallel")->Range(1 << 10, 1 << 20);

}  // namespace

BENCHMARK_MAIN();
