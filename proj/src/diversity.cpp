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
#include "ranklabel/diversity.hpp"

#include <span>
#include <vector>

namespace ranklabel {

namespace {

std::map<std::string, double> shares(const Column& col,
                                     std::span<const std::size_t> rows) {
  std::vector<std::size_t> counts(col.categories().size(), 0);
  std::size_t unknown = 0;
  for (std::size_t r : rows) {
    const auto code = col.codes()[r];
    if (code == Column::kMissingCode) {
      ++unknown;
    } else {
      ++counts[static_cast<std::size_t>(code)];
    }
  }
  std::map<std::string, std::size_t> merged;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c]) merged[col.categories()[c]] += counts[c];
  }
  if (unknown) merged[kUnknownCategory] += unknown;

  const double n = static_cast<double>(rows.size());
  std::map<std::string, double> out;
  for (const auto& [cat, count] : merged) {
    out.emplace(cat, static_cast<double>(count) / n);
  }
  return out;
}

}  // namespace

DiversityReport diversity_report(const Ranking& ranking, const Dataset& dataset,
                                 const std::string& attribute) {
  const Column& col = dataset.categorical_column(attribute);
  const std::span<const std::size_t> all(ranking.order);
  DiversityReport report;
  report.attribute = attribute;
  report.proportions_topk = shares(col, all.first(ranking.k));
  report.proportions_overall = shares(col, all);
  return report;
}

}  // namespace ranklabel
