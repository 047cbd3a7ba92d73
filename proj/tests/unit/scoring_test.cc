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


#include "ranklabel/scoring.hpp"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "ranklabel/error.hpp"

namespace ranklabel {
namespace {

using ::testing::ElementsAre;

ScoredRows scored(std::vector<double> scores) {
  ScoredRows s;
  for (std::size_t i = 0; i < scores.size(); ++i) s.rows.push_back({i, scores[i]});
  return s;
}

std::string random_csv(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_real_distribution<double> u(-5, 5);
  std::string csv;
  for (int c = 0; c < cols; ++c) csv += (c ? ",x" : "x") + std::to_string(c);
  csv += "\n";
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      csv += (c ? "," : "") + std::to_string(u(rng));
    }
    csv += "\n";
  }
  return csv;
}

TEST(ComputeScoresTest, ZeroWeightAnnihilates) {
  const Dataset ds = load_csv("a,b\n0.4,0.9\n");
  const auto out = compute_scores(ds, {{{"a", 1.0}, {"b", 0.0}}, Normalization::kNone});
  ASSERT_EQ(out.rows.size(), 1u);
  EXPECT_EQ(out.rows[0].score, 0.4);
}

TEST(ComputeScoresTest, ConvexCombination) {
  const Dataset ds = load_csv("a,b\n1,0\n");
  const auto out = compute_scores(ds, {{{"a", 0.5}, {"b", 0.5}}, Normalization::kNone});
  EXPECT_EQ(out.rows[0].score, 0.5);
}

TEST(ComputeScoresTest, MinMaxMatchesDirectEvaluation) {
  std::mt19937_64 rng(21);
  const Dataset ds = load_csv(random_csv(rng, 5, 2));
  const auto out =
      compute_scores(ds, {{{"x0", 1.0}, {"x1", -1.0}}, Normalization::kMinMax});
  const auto a = ds.column("x0").numbers();
  const auto b = ds.column("x1").numbers();
  const auto [amin, amax] = std::minmax_element(a.begin(), a.end());
  const auto [bmin, bmax] = std::minmax_element(b.begin(), b.end());
  ASSERT_EQ(out.rows.size(), 5u);
  for (std::size_t r = 0; r < 5; ++r) {
    const double expected = (a[r] - *amin) / (*amax - *amin) -
                            (b[r] - *bmin) / (*bmax - *bmin);
    EXPECT_NEAR(out.rows[r].score, expected, 1e-12);
  }
}

TEST(ComputeScoresTest, DropsRowsMissingWeightedValues) {
  const Dataset ds = load_csv("a,b,c\n1,2,NA\nNA,1,1\n3,NA,1\n4,4,NA\n");
  const auto out = compute_scores(ds, {{{"a", 1.0}, {"b", 0.0}}, Normalization::kNone});
  EXPECT_EQ(out.dropped, 2u);
  ASSERT_EQ(out.rows.size(), 2u);
  EXPECT_EQ(out.rows[0].row, 0u);
  EXPECT_EQ(out.rows[1].row, 3u);
}

TEST(ComputeScoresTest, Errors) {
  const Dataset ds = load_csv("a,c,m\n1,x,NA\n2,y,NA\n");
  auto code = [&](ScoringSpec spec) {
    try {
      compute_scores(ds, spec);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kNotFound;
  };
  EXPECT_EQ(code({{{"zz", 1.0}}}), ErrorCode::kUnknownAttribute);
  EXPECT_EQ(code({{{"c", 1.0}}}), ErrorCode::kTypeMismatch);
  EXPECT_EQ(code({{{"a", 0.0}}}), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code({{}}), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code({{{"m", 1.0}}}), ErrorCode::kAllRowsDropped);
}

TEST(RankTest, TiesBrokenByRowIndex) {
  const Ranking r = rank(scored({0.2, 0.9, 0.9, 0.1}), 10);
  EXPECT_THAT(r.order, ElementsAre(1u, 2u, 0u, 3u));
  EXPECT_THAT(r.scores, ElementsAre(0.9, 0.9, 0.2, 0.1));
  EXPECT_EQ(r.k, 4u);
}

TEST(RankTest, SingleRowAndErrors) {
  const Ranking r = rank(scored({3.0}), 10);
  EXPECT_THAT(r.order, ElementsAre(0u));
  EXPECT_EQ(r.k, 1u);
  EXPECT_THROW(rank(scored({}), 10), Error);
  EXPECT_THROW(rank(scored({1.0}), 0), Error);
}

TEST(RankTest, MatchesReferenceSort) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> u(0, 40);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> scores(100);
    for (auto& s : scores) s = u(rng) / 4.0;
    const Ranking r = rank(scored(scores), 10);
    std::vector<std::size_t> expected(scores.size());
    std::iota(expected.begin(), expected.end(), 0);
    std::stable_sort(expected.begin(), expected.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    EXPECT_EQ(r.order, expected);
    EXPECT_TRUE(std::is_sorted(r.scores.rbegin(), r.scores.rend()));
  }
}

TEST(RankingPropertyTest, PositiveScalingPreservesOrder) {
  std::mt19937_64 rng(8);
  const Dataset ds = load_csv(random_csv(rng, 200, 3));
  const ScoringSpec base{{{"x0", 0.7}, {"x1", -0.2}, {"x2", 1.1}},
                         Normalization::kZScore};
  ScoringSpec scaled = base;
  for (auto& [name, w] : scaled.weights) w *= 3.5;
  const Ranking a = rank(compute_scores(ds, base));
  const Ranking b = rank(compute_scores(ds, scaled));
  EXPECT_EQ(a.order, b.order);
  EXPECT_EQ(a, rank(compute_scores(ds, base)));
}

TEST(RankingPropertyTest, SingleAttributeOrdersDescending) {
  std::mt19937_64 rng(9);
  const Dataset ds = load_csv(random_csv(rng, 150, 1));
  for (auto mode : {Normalization::kNone, Normalization::kMinMax, Normalization::kZScore}) {
    const Ranking r = rank(compute_scores(ds, {{{"x0", 2.0}}, mode}));
    const auto v = ds.column("x0").numbers();
    for (std::size_t i = 1; i < r.order.size(); ++i) {
      EXPECT_GT(v[r.order[i - 1]], v[r.order[i]]);
    }
  }
}

}  // namespace
}  // namespace ranklabel
