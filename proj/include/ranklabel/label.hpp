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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ranklabel/dataset.hpp"
#include "ranklabel/diversity.hpp"
#include "ranklabel/fairness.hpp"
#include "ranklabel/insight.hpp"
#include "ranklabel/scoring.hpp"

namespace ranklabel {

inline constexpr std::string_view kEngineVersion = "1.0.0";
inline constexpr std::string_view kLabelSchemaVersion = "1.0";

struct LabelMetadata {
  std::string dataset_digest;
  std::size_t row_count = 0;  // ranked (retained) rows
  std::size_t dropped_rows = 0;
  std::size_t k = 0;
  double alpha = kDefaultAlpha;
  std::optional<double> p_override;
  Normalization normalization = Normalization::kNone;
  std::map<std::string, double> weights;
  std::string sensitive_attribute;
  std::vector<std::string> diversity_attributes;
  double strength_threshold = kDefaultStrengthThreshold;
  double stability_threshold = kDefaultStabilityThreshold;
  std::string engine_version;
  std::map<std::string, std::string> methodology;
  std::optional<std::string> generated_at;

  friend bool operator==(const LabelMetadata&, const LabelMetadata&) = default;
};

struct NutritionalLabel {
  LabelMetadata metadata;
  RecipeReport recipe;
  IngredientReport ingredients;
  StabilityResult stability;
  std::vector<FairnessResult> fairness;
  std::vector<DiversityReport> diversity;

  friend bool operator==(const NutritionalLabel&,
                         const NutritionalLabel&) = default;
};

struct LabelOptions {
  double strength_threshold = kDefaultStrengthThreshold;
  double stability_threshold = kDefaultStabilityThreshold;
  // Off by default so identical inputs give byte-identical labels.
  bool include_timestamp = false;
};

// Methodology notes recorded in every label's metadata.
std::map<std::string, std::string> methodology_notes();

// Runs every widget. `dataset` must be the table the ranking was computed
// from (digests are checked). Diversity covers the sensitive attribute
// followed by `diversity_attrs`, duplicates removed. Errors are rethrown
// tagged with the widget that raised them.
NutritionalLabel build_label(const Dataset& dataset, const Ranking& ranking,
                             const std::string& sensitive,
                             const std::vector<std::string>& diversity_attrs,
                             const FairnessConfig& config,
                             const LabelOptions& options = {});

// Canonical JSON: fixed key order, shortest round-trip floats, optional
// fields omitted rather than null.
std::string render_json(const NutritionalLabel& label);

// Inverse of render_json. Throws Error(kInvalidArgument) on bad input.
NutritionalLabel parse_label(std::string_view json);

// Self-contained HTML document with one collapsible section per widget.
std::string render_html(const NutritionalLabel& label);

}  // namespace ranklabel
