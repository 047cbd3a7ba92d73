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

#include "ranklabel/request.hpp"

#include <cmath>
#include <set>

namespace ranklabel {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

namespace {

std::string first_message(const std::vector<FieldError>& fields) {
  if (fields.empty()) return "invalid request";
  return fields.front().field + ": " + fields.front().message;
}

ErrorCode first_code(const std::vector<FieldError>& fields) {
  return fields.empty() ? ErrorCode::kInvalidRequest : fields.front().code;
}

}  // namespace

RequestError::RequestError(std::vector<FieldError> fields)
    : Error(first_code(fields), first_message(fields)),
      fields_(std::move(fields)) {}

RankingRequest parse_ranking_request(const Json& body) {
  std::vector<FieldError> errors;
  const auto bad = [&](std::string field, std::string message) {
    errors.push_back({std::move(field), ErrorCode::kInvalidRequest,
                      std::move(message)});
  };
  RankingRequest req;
  if (!body.is_object()) {
    bad("body", "expected a JSON object");
    throw RequestError(std::move(errors));
  }

  if (!body.contains("weights") || !body["weights"].is_object()) {
    bad("weights", "required object of attribute weights");
  } else {
    for (const auto& [name, w] : body["weights"].items()) {
      if (!w.is_number()) {
        bad("weights." + name, "weight must be a number");
      } else {
        req.weights[name] = w.get<double>();
      }
    }
  }

  if (body.contains("normalization")) {
    const auto& n = body["normalization"];
    try {
      req.normalization = parse_normalization(n.is_string() ? n.get<std::string>()
                                                            : std::string());
    } catch (const Error&) {
      bad("normalization", "expected one of none, minmax, zscore");
    }
  }

  if (!body.contains("sensitive_attribute") ||
      !body["sensitive_attribute"].is_string()) {
    bad("sensitive_attribute", "required attribute name");
  } else {
    req.sensitive_attribute = body["sensitive_attribute"].get<std::string>();
  }

  if (body.contains("diversity_attributes")) {
    const auto& d = body["diversity_attributes"];
    if (!d.is_array()) {
      bad("diversity_attributes", "expected an array of attribute names");
    } else {
      for (const auto& a : d) {
        if (!a.is_string()) {
          bad("diversity_attributes", "attribute names must be strings");
          break;
        }
        req.diversity_attributes.push_back(a.get<std::string>());
      }
    }
  }

  if (body.contains("k")) {
    const auto& k = body["k"];
    if (!k.is_number_integer() || k.get<std::int64_t>() < 1) {
      bad("k", "expected a positive integer");
    } else {
      req.k = k.get<std::size_t>();
    }
  }
  if (body.contains("alpha")) {
    if (!body["alpha"].is_number()) {
      bad("alpha", "expected a number in (0, 1)");
    } else {
      req.alpha = body["alpha"].get<double>();
    }
  }
  if (body.contains("p") && !body["p"].is_null()) {
    if (!body["p"].is_number()) {
      bad("p", "expected a number in (0, 1)");
    } else {
      req.p = body["p"].get<double>();
    }
  }

  if (!errors.empty()) throw RequestError(std::move(errors));
  return req;
}

OrderedJson request_json(const RankingRequest& request) {
  OrderedJson j;
  j["weights"] = OrderedJson::object();
  for (const auto& [name, w] : request.weights) j["weights"][name] = w;
  j["normalization"] = normalization_name(request.normalization);
  j["sensitive_attribute"] = request.sensitive_attribute;
  j["diversity_attributes"] = request.diversity_attributes;
  j["k"] = request.k;
  j["alpha"] = request.alpha;
  if (request.p) j["p"] = *request.p;
  return j;
}

std::vector<FieldError> validate_request(const Dataset& dataset,
                                         const RankingRequest& request) {
  std::vector<FieldError> errors;
  const auto add = [&](std::string field, ErrorCode code, std::string msg) {
    errors.push_back({std::move(field), code, std::move(msg)});
  };

  bool any_nonzero = false;
  for (const auto& [name, w] : request.weights) {
    const std::string field = "weights." + name;
    if (!dataset.has_column(name)) {
      add(field, ErrorCode::kUnknownAttribute,
          "unknown attribute '" + name + "'");
    } else if (!dataset.column(name).is_numeric()) {
      add(field, ErrorCode::kTypeMismatch,
          "scoring attribute '" + name + "' is not numeric");
    }
    if (!std::isfinite(w)) {
      add(field, ErrorCode::kInvalidArgument, "weight must be finite");
    }
    any_nonzero = any_nonzero || w != 0.0;
  }
  if (!any_nonzero) {
    add("weights", ErrorCode::kInvalidArgument,
        "at least one scoring attribute with a nonzero weight is required");
  }

  const std::string& s = request.sensitive_attribute;
  if (s.empty()) {
    add("sensitive_attribute", ErrorCode::kInvalidRequest,
        "a sensitive attribute is required");
  } else if (!dataset.has_column(s)) {
    add("sensitive_attribute", ErrorCode::kUnknownAttribute,
        "unknown attribute '" + s + "'");
  } else if (dataset.column(s).is_numeric()) {
    add("sensitive_attribute", ErrorCode::kTypeMismatch,
        "sensitive attribute '" + s + "' is not categorical");
  } else if (dataset.column(s).categories().size() != 2) {
    add("sensitive_attribute", ErrorCode::kNonBinaryAttribute,
        "sensitive attribute '" + s + "' has " +
            std::to_string(dataset.column(s).categories().size()) +
            " distinct values; exactly 2 are required");
  }

  for (const auto& a : request.diversity_attributes) {
    if (!dataset.has_column(a)) {
      add("diversity_attributes", ErrorCode::kUnknownAttribute,
          "unknown attribute '" + a + "'");
    } else if (dataset.column(a).is_numeric()) {
      add("diversity_attributes", ErrorCode::kTypeMismatch,
          "diversity attribute '" + a + "' is not categorical");
    }
  }

  if (request.k < 1) {
    add("k", ErrorCode::kInvalidArgument, "k must be positive");
  }
  if (!(request.alpha > 0.0 && request.alpha < 1.0)) {
    add("alpha", ErrorCode::kInvalidArgument, "alpha must lie in (0, 1)");
  }
  if (request.p && !(*request.p > 0.0 && *request.p < 1.0)) {
    add("p", ErrorCode::kInvalidArgument, "p must lie in (0, 1)");
  }
  return errors;
}

RankingOutcome run_request(const Dataset& dataset,
                           const RankingRequest& request,
                           const LabelOptions& options) {
  if (auto errors = validate_request(dataset, request); !errors.empty()) {
    throw RequestError(std::move(errors));
  }
  std::vector<std::string> required;
  for (const auto& [name, w] : request.weights) required.push_back(name);
  required.push_back(request.sensitive_attribute);
  Dataset retained = dataset.retain_complete(required);
  if (retained.row_count() == 0) {
    throw Error(ErrorCode::kAllRowsDropped,
                "every row is missing a scoring or sensitive attribute");
  }

  ScoringSpec spec{request.weights, request.normalization};
  Ranking ranking = rank(compute_scores(retained, spec), request.k);

  FairnessConfig config;
  config.alpha = request.alpha;
  config.p = request.p;
  NutritionalLabel label =
      build_label(retained, ranking, request.sensitive_attribute,
                  request.diversity_attributes, config, options);
  return {std::move(retained), std::move(ranking), std::move(label)};
}

namespace {

OrderedJson cell_json(const Column& col, std::size_t row) {
  if (col.is_missing(row)) return nullptr;
  if (col.is_numeric()) return *col.number(row);
  return std::string(*col.category(row));
}

}  // namespace

OrderedJson preview_json(const Dataset& retained, const Ranking& ranking) {
  OrderedJson rows = OrderedJson::array();
  for (std::size_t i = 0; i < ranking.k; ++i) {
    const std::size_t row = ranking.order[i];
    OrderedJson j;
    j["rank"] = i + 1;
    j["row"] = row;
    j["score"] = ranking.scores[i];
    OrderedJson values = OrderedJson::object();
    for (const auto& col : retained.columns()) {
      values[col.name()] = cell_json(col, row);
    }
    j["values"] = std::move(values);
    rows.push_back(std::move(j));
  }
  return rows;
}

OrderedJson describe_column(const Dataset& dataset, const Column& column) {
  OrderedJson j;
  j["name"] = column.name();
  j["kind"] = column_kind_name(column.kind());
  j["missing"] = column.missing_count();
  if (column.is_numeric()) {
    if (column.missing_count() < column.size()) {
      const auto s = column_stats(dataset, column.name());
      j["stats"] = {{"minimum", s.minimum}, {"maximum", s.maximum},
                    {"median", s.median},   {"count", s.count},
                    {"missing", s.missing}};
    }
  } else {
    std::map<std::string, std::size_t> counts;
    for (std::size_t r = 0; r < column.size(); ++r) {
      if (auto c = column.category(r)) ++counts[std::string(*c)];
    }
    j["categories"] = OrderedJson::object();
    for (const auto& [cat, n] : counts) j["categories"][cat] = n;
    j["binary"] = counts.size() == 2;
  }
  return j;
}

OrderedJson describe_dataset(const Dataset& dataset) {
  OrderedJson j;
  j["row_count"] = dataset.row_count();
  j["source_digest"] = dataset.source_digest();
  j["columns"] = OrderedJson::array();
  for (const auto& col : dataset.columns()) {
    j["columns"].push_back(describe_column(dataset, col));
  }
  return j;
}

OrderedJson histogram_json(const Histogram& h) {
  OrderedJson j;
  j["attribute"] = h.attribute;
  j["bin_edges"] = h.bin_edges;
  j["counts"] = h.counts;
  return j;
}

std::map<std::string, double> parse_weights(std::string_view text) {
  std::map<std::string, double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "weights must look like name=value[,name=value...]");
    }
    const std::string name(item.substr(0, eq));
    const auto value = parse_decimal(item.substr(eq + 1));
    if (!value) {
      throw Error(ErrorCode::kInvalidArgument,
                  "weight for '" + name + "' is not a number");
    }
    if (!out.emplace(name, *value).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "weight for '" + name + "' given twice");
    }
    pos = comma + 1;
  }
  return out;
}

}  // namespace ranklabel
