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

#include <map>
#include <string>

#include "ranklabel/dataset.hpp"
#include "ranklabel/scoring.hpp"

namespace ranklabel {

// Bucket for missing categorical values.
inline constexpr const char* kUnknownCategory = "unknown";

struct DiversityReport {
  std::string attribute;
  std::map<std::string, double> proportions_topk;
  std::map<std::string, double> proportions_overall;

  friend bool operator==(const DiversityReport&,
                         const DiversityReport&) = default;
};

// Category shares among the top-k ranked rows and among all ranked rows.
// Categories with no rows in a scope are omitted from that scope's map.
DiversityReport diversity_report(const Ranking& ranking, const Dataset& dataset,
                                 const std::string& attribute);

}  // namespace ranklabel
