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

#include "ranklabel/insight.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <numeric>

#include "ranklabel/error.hpp"

namespace ranklabel {

namespace {

std::optional<ColumnStats> try_stats(const Dataset& dataset,
                                     std::string_view attribute,
                                     std::span<const std::size_t> rows) {
  try {
    return column_stats(dataset, attribute, rows);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kEmptyColumn) return std::nullopt;
    throw;
  }
}

}  // namespace

ScopedStats scoped_stats(const Dataset& dataset, const Ranking& ranking,
                         std::string_view attribute) {
  const std::span<const std::size_t> all(ranking.order);
  ScopedStats s;
  s.topk = try_stats(dataset, attribute, all.first(ranking.k));
  s.overall = try_stats(dataset, attribute, all);
  return s;
}

RecipeReport recipe(const Dataset& dataset, const Ranking& ranking) {
  const Dataset view = scoring_view(dataset, ranking.spec);
  double total = 0.0;
  for (const auto& [name, w] : ranking.spec.weights) total += std::abs(w);
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "recipe needs at least one nonzero weight");
  }
  RecipeReport report;
  for (const auto& [name, w] : ranking.spec.weights) {
    RecipeEntry e;
    e.attribute = name;
    e.weight = w;
    e.share = std::abs(w) / total;
    e.stats = scoped_stats(view, ranking, name);
    report.entries.push_back(std::move(e));
  }
  return report;
}

std::vector<double> fractional_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
    // Positions i..j (0-based) share the average of ranks i+1..j+1.
    const double avg = (static_cast<double>(i + j) + 2.0) / 2.0;
    for (std::size_t t = i; t <= j; ++t) ranks[idx[t]] = avg;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "spearman inputs differ in length");
  }
  if (x.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "spearman needs at least two points");
  }
  const auto rx = fractional_ranks(x);
  const auto ry = fractional_ranks(y);
  const double n = static_cast<double>(x.size());
  // Both rank vectors have mean (n + 1) / 2 regardless of ties.
  const double mean = (n + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kUndefinedCorrelation,
                "correlation is undefined for a constant input");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

IngredientReport ingredients(const Dataset& dataset, const Ranking& ranking,
                             double strength_threshold) {
  const Dataset view = scoring_view(dataset, ranking.spec);
  std::vector<const Column*> numeric;
  for (const auto& c : view.columns()) {
    if (c.is_numeric()) numeric.push_back(&c);
  }
  if (numeric.empty()) {
    throw Error(ErrorCode::kTypeMismatch, "dataset has no numeric attribute");
  }

  std::vector<IngredientEntry> entries(numeric.size());
  std::vector<std::exception_ptr> failures(numeric.size());
  const auto count = static_cast<std::int64_t>(numeric.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t a = 0; a < count; ++a) {
    const auto slot = static_cast<std::size_t>(a);
    try {
      const Column& col = *numeric[slot];
      std::vector<double> xs;
      std::vector<double> ys;
      xs.reserve(ranking.size());
      ys.reserve(ranking.size());
      for (std::size_t i = 0; i < ranking.size(); ++i) {
        if (auto v = col.number(ranking.order[i])) {
          xs.push_back(*v);
          ys.push_back(ranking.scores[i]);
        }
      }
      IngredientEntry& e = entries[slot];
      e.attribute = col.name();
      if (xs.size() >= 2) {
        try {
          e.correlation = spearman(xs, ys);
        } catch (const Error& err) {
          if (err.code() != ErrorCode::kUndefinedCorrelation) throw;
          e.correlation = 0.0;
        }
      }
      e.importance = std::abs(e.correlation);
      e.strong = e.importance >= strength_threshold;
      e.stats = scoped_stats(view, ranking, col.name());
    } catch (...) {
      failures[slot] = std::current_exception();
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  std::sort(entries.begin(), entries.end(),
            [](const IngredientEntry& a, const IngredientEntry& b) {
              if (a.importance != b.importance) {
                return a.importance > b.importance;
              }
              return a.attribute < b.attribute;
            });
  IngredientReport report;
  report.entries = std::move(entries);
  report.strength_threshold = strength_threshold;
  return report;
}

double stability_slope(std::span<const double> scores, double dataset_min,
                       double dataset_max) {
  const std::size_t m = scores.size();
  if (m < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "stability slope needs at least two scores");
  }
  const double range = dataset_max - dataset_min;
  std::vector<double> ys(m);
  for (std::size_t i = 0; i < m; ++i) {
    ys[i] = range > 0.0 ? (scores[i] - dataset_min) / range : 0.5;
  }
  const double denom = static_cast<double>(m - 1);
  const double x_mean = 0.5;
  double y_mean = 0.0;
  for (double y : ys) y_mean += y;
  y_mean /= static_cast<double>(m);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = static_cast<double>(i) / denom - x_mean;
    sxy += dx * (ys[i] - y_mean);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

bool is_stable(double slope, double threshold) {
  return std::abs(slope) > threshold;
}

StabilityResult stability(const Ranking& ranking, double threshold) {
  if (ranking.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "stability needs at least two ranked rows");
  }
  if (ranking.k < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "top-k stability needs k of at least 2");
  }
  const std::span<const double> scores(ranking.scores);
  const double lo = scores.back();
  const double hi = scores.front();
  StabilityResult s;
  s.threshold = threshold;
  s.slope_topk = stability_slope(scores.first(ranking.k), lo, hi);
  s.slope_overall = stability_slope(scores, lo, hi);
  s.stable_topk = is_stable(s.slope_topk, threshold);
  s.stable_overall = is_stable(s.slope_overall, threshold);
  return s;
}

}  // namespace ranklabel
