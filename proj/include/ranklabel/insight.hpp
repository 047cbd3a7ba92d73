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

// Recipe, Ingredients and Stability widgets.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ranklabel/dataset.hpp"
#include "ranklabel/scoring.hpp"

namespace ranklabel {

inline constexpr double kDefaultStrengthThreshold = 0.5;
inline constexpr double kDefaultStabilityThreshold = 0.25;

// Stats are absent when the attribute has no non-missing value in scope.
struct ScopedStats {
  std::optional<ColumnStats> topk;
  std::optional<ColumnStats> overall;

  friend bool operator==(const ScopedStats&, const ScopedStats&) = default;
};

struct RecipeEntry {
  std::string attribute;
  double weight = 0.0;
  double share = 0.0;  // |weight| / sum |weights|
  ScopedStats stats;

  friend bool operator==(const RecipeEntry&, const RecipeEntry&) = default;
};

struct RecipeReport {
  std::vector<RecipeEntry> entries;  // attribute name order

  friend bool operator==(const RecipeReport&, const RecipeReport&) = default;
};

struct IngredientEntry {
  std::string attribute;
  double importance = 0.0;   // |correlation|
  double correlation = 0.0;  // Spearman rho against the score
  bool strong = false;
  ScopedStats stats;

  friend bool operator==(const IngredientEntry&,
                         const IngredientEntry&) = default;
};

struct IngredientReport {
  std::vector<IngredientEntry> entries;  // importance descending, then name
  double strength_threshold = kDefaultStrengthThreshold;

  friend bool operator==(const IngredientReport&,
                         const IngredientReport&) = default;
};

struct StabilityResult {
  double slope_topk = 0.0;
  double slope_overall = 0.0;
  bool stable_topk = false;
  bool stable_overall = false;
  double threshold = kDefaultStabilityThreshold;

  friend bool operator==(const StabilityResult&,
                         const StabilityResult&) = default;
};

// Stats for `attribute` over the first k ranked rows and over all ranked
// rows. Attributes in `dataset` are used as-is.
ScopedStats scoped_stats(const Dataset& dataset, const Ranking& ranking,
                         std::string_view attribute);

RecipeReport recipe(const Dataset& dataset, const Ranking& ranking);

// Average ranks for ties, 1-based.
std::vector<double> fractional_ranks(std::span<const double> values);

// Spearman's rho as the Pearson correlation of fractional ranks.
// Throws kUndefinedCorrelation when either input is constant,
// kInsufficientData for fewer than two points.
double spearman(std::span<const double> x, std::span<const double> y);

IngredientReport ingredients(
    const Dataset& dataset, const Ranking& ranking,
    double strength_threshold = kDefaultStrengthThreshold);

// Least-squares slope of the normalized score distribution. Scores are
// scaled to [0, 1] by [dataset_min, dataset_max] (0.5 when that range is
// empty) and placed at x = i / (m - 1), so a descending list gives a
// negative slope.
double stability_slope(std::span<const double> scores, double dataset_min,
                       double dataset_max);

// A ranking is stable at a scope iff |slope| > threshold; a slope of
// exactly the threshold counts as unstable.
bool is_stable(double slope, double threshold = kDefaultStabilityThreshold);

StabilityResult stability(const Ranking& ranking,
                          double threshold = kDefaultStabilityThreshold);

}  // namespace ranklabel
