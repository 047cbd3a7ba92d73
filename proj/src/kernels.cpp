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

#include "ranklabel/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ranklabel::kernels {

std::size_t bin_index(double value, std::span<const double> edges) {
  const std::size_t bins = edges.size() - 1;
  const double lo = edges.front();
  const double hi = edges.back();
  const double width = (hi - lo) / static_cast<double>(bins);
  auto idx = static_cast<std::size_t>(
      std::clamp((value - lo) / width, 0.0, static_cast<double>(bins - 1)));
  // The quotient can land one bin off near an edge; settle against the
  // edges actually reported.
  while (idx > 0 && value < edges[idx]) --idx;
  while (idx + 1 < bins && value >= edges[idx + 1]) ++idx;
  return idx;
}

namespace {

inline bool in_range(double v, std::span<const double> edges) {
  return !std::isnan(v) && v >= edges.front() && v <= edges.back();
}

}  // namespace

namespace serial {

void weighted_sum(std::span<const std::span<const double>> columns,
                  std::span<const double> weights, std::span<double> out) {
  assert(columns.size() == weights.size());
  for (std::size_t r = 0; r < out.size(); ++r) {
    double acc = 0.0;
    for (std::size_t j = 0; j < columns.size(); ++j) {
      acc += weights[j] * columns[j][r];
    }
    out[r] = acc;
  }
}

void affine_map(std::span<const double> in, double center, double spread,
                std::span<double> out) {
  for (std::size_t r = 0; r < in.size(); ++r) {
    out[r] = (in[r] - center) / spread;
  }
}

std::vector<std::size_t> histogram_counts(std::span<const double> values,
                                          std::span<const double> edges) {
  std::vector<std::size_t> counts(edges.size() - 1, 0);
  for (double v : values) {
    if (in_range(v, edges)) ++counts[bin_index(v, edges)];
  }
  return counts;
}

}  // namespace serial

namespace parallel {

void weighted_sum(std::span<const std::span<const double>> columns,
                  std::span<const double> weights, std::span<double> out) {
  assert(columns.size() == weights.size());
  const auto n = static_cast<std::int64_t>(out.size());
  const std::size_t m = columns.size();
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < n; ++r) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      acc += weights[j] * columns[j][static_cast<std::size_t>(r)];
    }
    out[static_cast<std::size_t>(r)] = acc;
  }
}

void affine_map(std::span<const double> in, double center, double spread,
                std::span<double> out) {
  const auto n = static_cast<std::int64_t>(in.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < n; ++r) {
    const auto i = static_cast<std::size_t>(r);
    out[i] = (in[i] - center) / spread;
  }
}

std::vector<std::size_t> histogram_counts(std::span<const double> values,
                                          std::span<const double> edges) {
  const std::size_t bins = edges.size() - 1;
  std::vector<std::size_t> counts(bins, 0);
  const auto n = static_cast<std::int64_t>(values.size());
#pragma omp parallel
  {
    std::vector<std::size_t> local(bins, 0);
#pragma omp for schedule(static) nowait
    for (std::int64_t r = 0; r < n; ++r) {
      const double v = values[static_cast<std::size_t>(r)];
      if (in_range(v, edges)) ++local[bin_index(v, edges)];
    }
#pragma omp critical(ranklabel_histogram_merge)
    for (std::size_t b = 0; b < bins; ++b) counts[b] += local[b];
  }
  return counts;
}

}  // namespace parallel

}  // namespace ranklabel::kernels
