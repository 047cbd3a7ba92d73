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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ranklabel {

enum class ErrorCode {
  kInvalidDataset,
  kMalformedRow,
  kUnknownAttribute,
  kTypeMismatch,
  kEmptyColumn,
  kAllRowsDropped,
  kUndefinedCorrelation,
  kInsufficientData,
  kInvalidArgument,
  kEmptyGroup,
  kNonBinaryAttribute,
  kDegeneratePopulation,
  kInvalidRequest,
  kNotFound,
};

// Stable snake_case identifier, used in CLI reasons and HTTP error objects.
std::string_view error_code_name(ErrorCode code);

// All engine failures are reported through this exception. `widget` is set
// when the error surfaced while assembling a particular label widget, and
// `row` when a CSV record is at fault (0-based, header excluded).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  const std::optional<std::string>& widget() const noexcept { return widget_; }
  const std::optional<std::size_t>& row() const noexcept { return row_; }

  Error with_widget(std::string widget) const {
    Error e = *this;
    e.widget_ = std::move(widget);
    return e;
  }
  Error with_row(std::size_t row) const {
    Error e = *this;
    e.row_ = row;
    return e;
  }

 private:
  ErrorCode code_;
  std::optional<std::string> widget_;
  std::optional<std::size_t> row_;
};

}  // namespace ranklabel
