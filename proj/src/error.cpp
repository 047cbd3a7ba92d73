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
#include "ranklabel/error.hpp"

namespace ranklabel {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidDataset: return "invalid_dataset";
    case ErrorCode::kMalformedRow: return "malformed_row";
    case ErrorCode::kUnknownAttribute: return "unknown_attribute";
    case ErrorCode::kTypeMismatch: return "type_mismatch";
    case ErrorCode::kEmptyColumn: return "empty_column";
    case ErrorCode::kAllRowsDropped: return "all_rows_dropped";
    case ErrorCode::kUndefinedCorrelation: return "undefined_correlation";
    case ErrorCode::kInsufficientData: return "insufficient_data";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kEmptyGroup: return "empty_group";
    case ErrorCode::kNonBinaryAttribute: return "non_binary_attribute";
    case ErrorCode::kDegeneratePopulation: return "degenerate_population";
    case ErrorCode::kInvalidRequest: return "invalid_request";
    case ErrorCode::kNotFound: return "not_found";
  }
  return "unknown";
}

}  // namespace ranklabel
