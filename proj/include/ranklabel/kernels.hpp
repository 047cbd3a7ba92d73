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

#pragma once

// Row-parallel inner loops of the engine. Every kernel has a serial
// reference in kernels::serial and an OpenMP version in kernels::parallel
// with identical results: each output element is computed by exactly the
// same arithmetic, and the only cross-row reduction (histogram counts) is
// over integers. Floating-point reductions (means, variances) are kept out
// of this file so labels stay byte-identical regardless of thread count.

#include <cstddef>
#include <span>
#include <vector>

namespace ranklabel::kernels {

namespace serial {

// out[r] = sum_j weights[j] * columns[j][r], summed in column order.
// A NaN (missing) input yields a NaN output for that row.
void weighted_sum(std::span<const std::span<const double>> columns,
                  std::span<const double> weights, std::span<double> out);

// out[r] = (in[r] - center) / spread; NaN stays NaN.
void affine_map(std::span<const double> in, double center, double spread,
                std::span<double> out);

// Counts non-NaN values against `edges` (bins = edges.size() - 1). Bins are
// half-open [lo, hi) except the last, which is closed. Values outside
// [edges.front(), edges.back()] are ignored.
std::vector<std::size_t> histogram_counts(std::span<const double> values,
                                          std::span<const double> edges);

}  // namespace serial

namespace parallel {

void weighted_sum(std::span<const std::span<const double>> columns,
                  std::span<const double> weights, std::span<double> out);

void affine_map(std::span<const double> in, double center, double spread,
                std::span<double> out);

std::vector<std::size_t> histogram_counts(std::span<const double> values,
                                          std::span<const double> edges);

}  // namespace parallel

// Bin lookup shared by both histogram variants.
std::size_t bin_index(double value, std::span<const double> edges);

}  // namespace ranklabel::kernels
