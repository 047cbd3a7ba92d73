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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>

#include "ranklabel/error.hpp"
#include "ranklabel/kernels.hpp"

namespace ranklabel {

std::vector<std::string> ScoringSpec::attributes() const {
  std::vector<std::string> out;
  out.reserve(weights.size());
  for (const auto& [name, w] : weights) out.push_back(name);
  return out;
}

void ScoringSpec::validate(const Dataset& dataset) const {
  bool any_nonzero = false;
  for (const auto& [name, w] : weights) {
    dataset.numeric_column(name);
    if (!std::isfinite(w)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "weight for '" + name + "' is not finite");
    }
    any_nonzero = any_nonzero || w != 0.0;
  }
  if (!any_nonzero) {
    throw Error(ErrorCode::kInvalidArgument,
                "scoring function needs at least one nonzero weight");
  }
}

Dataset scoring_view(const Dataset& dataset, const ScoringSpec& spec) {
  const auto attrs = spec.attributes();
  return normalize_view(dataset, attrs, spec.normalization);
}

ScoredRows compute_scores(const Dataset& dataset, const ScoringSpec& spec) {
  spec.validate(dataset);
  const Dataset view = scoring_view(dataset, spec);

  std::vector<std::span<const double>> columns;
  std::vector<double> weights;
  for (const auto& [name, w] : spec.weights) {
    columns.push_back(view.numeric_column(name).numbers());
    weights.push_back(w);
  }
  std::vector<double> totals(dataset.row_count());
  kernels::parallel::weighted_sum(columns, weights, totals);

  ScoredRows out;
  out.spec = spec;
  out.dataset_digest = dataset.source_digest();
  out.rows.reserve(totals.size());
  for (std::size_t r = 0; r < totals.size(); ++r) {
    if (std::isnan(totals[r])) {
      ++out.dropped;
    } else {
      out.rows.push_back({r, totals[r]});
    }
  }
  if (out.rows.empty()) {
    throw Error(ErrorCode::kAllRowsDropped,
                "every row is missing a scoring attribute");
  }
  return out;
}

Ranking rank(const ScoredRows& scored, std::size_t k) {
  if (scored.rows.empty()) {
    throw Error(ErrorCode::kAllRowsDropped, "nothing to rank");
  }
  if (k == 0) {
    throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  }
  std::vector<ScoredRow> sorted = scored.rows;
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoredRow& a, const ScoredRow& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.row < b.row;
            });
  Ranking r;
  r.order.reserve(sorted.size());
  r.scores.reserve(sorted.size());
  for (const auto& s : sorted) {
    r.order.push_back(s.row);
    r.scores.push_back(s.score);
  }
  r.k = std::min(k, sorted.size());
  r.spec = scored.spec;
  r.dataset_digest = scored.dataset_digest;
  return r;
}

}  // namespace ranklabel
