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

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ranklabel/dataset.hpp"

namespace ranklabel {

inline constexpr std::size_t kDefaultTopK = 10;

// A linear scorer: score(row) = sum over weights of w * normalized(x).
// Every attribute listed in `weights` is a scoring attribute, including
// those with weight 0. Higher scores rank better; use negative weights for
// attributes where smaller is better.
struct ScoringSpec {
  std::map<std::string, double> weights;
  Normalization normalization = Normalization::kNone;

  std::vector<std::string> attributes() const;

  // Throws kInvalidArgument (no nonzero weight, non-finite weight),
  // kUnknownAttribute or kTypeMismatch.
  void validate(const Dataset& dataset) const;

  friend bool operator==(const ScoringSpec&, const ScoringSpec&) = default;
};

struct ScoredRow {
  std::size_t row = 0;
  double score = 0.0;

  friend bool operator==(const ScoredRow&, const ScoredRow&) = default;
};

struct ScoredRows {
  std::vector<ScoredRow> rows;
  std::size_t dropped = 0;
  ScoringSpec spec;
  std::string dataset_digest;
};

struct Ranking {
  std::vector<std::size_t> order;  // row indices, best first
  std::vector<double> scores;      // aligned with order, nonincreasing
  std::size_t k = kDefaultTopK;
  ScoringSpec spec;
  std::string dataset_digest;

  std::size_t size() const { return order.size(); }

  friend bool operator==(const Ranking&, const Ranking&) = default;
};

// The dataset with each scoring attribute replaced by its normalized
// values; the values that scores are actually computed from.
Dataset scoring_view(const Dataset& dataset, const ScoringSpec& spec);

ScoredRows compute_scores(const Dataset& dataset, const ScoringSpec& spec);

// Score descending, ties by ascending row index; k is clamped to the number
// of rows. Throws kAllRowsDropped on empty input, kInvalidArgument on k = 0.
Ranking rank(const ScoredRows& scored, std::size_t k = kDefaultTopK);

}  // namespace ranklabel
