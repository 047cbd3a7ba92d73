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

#include <gtest/gtest.h>
#include <omp.h>

#include <cmath>
#include <limits>
#include <random>
#include <span>
#include <vector>

namespace ranklabel::kernels {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> random_values(std::size_t n, std::uint64_t seed,
                                  double missing_rate) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0, 10);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng) < missing_rate ? kNaN : g(rng);
  return v;
}

bool same_bits(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::isnan(a[i]) != std::isnan(b[i])) return false;
    if (!std::isnan(a[i]) && a[i] != b[i]) return false;
  }
  return true;
}

class KernelParityTest : public ::testing::TestWithParam<int> {
 protected:
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(GetParam());
  }
  void TearDown() override { omp_set_num_threads(saved_); }

 private:
  int saved_ = 1;
};

TEST_P(KernelParityTest, WeightedSum) {
  const std::size_t n = 10007;
  const auto a = random_values(n, 1, 0.01);
  const auto b = random_values(n, 2, 0.0);
  const auto c = random_values(n, 3, 0.02);
  const std::vector<std::span<const double>> cols{a, b, c};
  const std::vector<double> w{1.0, -0.3, 2.5};
  std::vector<double> s(n), p(n);
  serial::weighted_sum(cols, w, s);
  parallel::weighted_sum(cols, w, p);
  EXPECT_TRUE(same_bits(s, p));
  EXPECT_EQ(s[17], 1.0 * a[17] + -0.3 * b[17] + 2.5 * c[17]);
}

TEST_P(KernelParityTest, AffineMap) {
  const auto a = random_values(4099, 4, 0.05);
  std::vector<double> s(a.size()), p(a.size());
  serial::affine_map(a, 1.5, 3.25, s);
  parallel::affine_map(a, 1.5, 3.25, p);
  EXPECT_TRUE(same_bits(s, p));
}

TEST_P(KernelParityTest, HistogramCounts) {
  const auto a = random_values(20011, 5, 0.03);
  double lo = 1e300, hi = -1e300;
  for (double x : a) {
    if (std::isnan(x)) continue;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  for (std::size_t bins : {1u, 2u, 10u, 64u}) {
    std::vector<double> edges(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) {
      edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
    }
    edges.back() = hi;
    const auto s = serial::histogram_counts(a, edges);
    const auto p = parallel::histogram_counts(a, edges);
    EXPECT_EQ(s, p);
    std::size_t total = 0;
    for (auto c : s) total += c;
    std::size_t present = 0;
    for (double x : a) present += std::isnan(x) ? 0 : 1;
    EXPECT_EQ(total, present);
  }
}

INSTANTIATE_TEST_SUITE_P(Threads, KernelParityTest, ::testing::Values(1, 2, 4, 7));

TEST(BinIndexTest, EdgesAreHalfOpenExceptLast) {
  const std::vector<double> edges{0.0, 0.5, 1.0};
  EXPECT_EQ(bin_index(0.0, edges), 0u);
  EXPECT_EQ(bin_index(0.49999999, edges), 0u);
  EXPECT_EQ(bin_index(0.5, edges), 1u);
  EXPECT_EQ(bin_index(1.0, edges), 1u);
}

TEST(BinIndexTest, AgreesWithStoredEdges) {
  const std::vector<double> edges{0.1, 0.2, 0.30000000000000004, 0.4};
  EXPECT_EQ(bin_index(0.3, edges), 1u);
  EXPECT_EQ(bin_index(0.30000000000000004, edges), 2u);
}

}  // namespace
}  // namespace ranklabel::kernels
