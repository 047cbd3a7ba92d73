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

// The end-to-end ranking workflow shared by the CLI and the HTTP service:
// validate a request against a dataset, drop incomplete rows, score, rank
// and build the label.

#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "ranklabel/dataset.hpp"
#include "ranklabel/error.hpp"
#include "ranklabel/label.hpp"
#include "ranklabel/scoring.hpp"

namespace ranklabel {

inline constexpr std::size_t kDefaultHistogramBins = 10;

struct RankingRequest {
  std::map<std::string, double> weights;
  Normalization normalization = Normalization::kNone;
  std::string sensitive_attribute;
  std::vector<std::string> diversity_attributes;
  std::size_t k = kDefaultTopK;
  double alpha = kDefaultAlpha;
  std::optional<double> p;

  friend bool operator==(const RankingRequest&,
                         const RankingRequest&) = default;
};

struct FieldError {
  std::string field;
  ErrorCode code;
  std::string message;
};

// A request that failed validation; code() and what() describe the first
// problem, fields() lists all of them.
class RequestError : public Error {
 public:
  explicit RequestError(std::vector<FieldError> fields);
  const std::vector<FieldError>& fields() const { return fields_; }

 private:
  std::vector<FieldError> fields_;
};

// Throws RequestError for missing or ill-typed fields.
RankingRequest parse_ranking_request(const nlohmann::json& body);
nlohmann::ordered_json request_json(const RankingRequest& request);

std::vector<FieldError> validate_request(const Dataset& dataset,
                                         const RankingRequest& request);

struct RankingOutcome {
  Dataset retained;
  Ranking ranking;
  NutritionalLabel label;
};

// Throws RequestError when validation fails, Error otherwise.
RankingOutcome run_request(const Dataset& dataset,
                           const RankingRequest& request,
                           const LabelOptions& options = {});

// Top-k rows with rank, row index, score and the row's values.
nlohmann::ordered_json preview_json(const Dataset& retained,
                                    const Ranking& ranking);

// Schema plus per-attribute statistics (numeric) or category counts.
nlohmann::ordered_json describe_dataset(const Dataset& dataset);
nlohmann::ordered_json describe_column(const Dataset& dataset,
                                       const Column& column);

nlohmann::ordered_json histogram_json(const Histogram& h);

// Parses "a=1.0,b=-0.5". Throws Error(kInvalidArgument) on bad syntax.
std::map<std::string, double> parse_weights(std::string_view text);

}  // namespace ranklabel
