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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ranklabel {

enum class ColumnKind { kNumeric, kCategorical };

std::string_view column_kind_name(ColumnKind kind);

enum class Normalization { kNone, kMinMax, kZScore };

std::string_view normalization_name(Normalization mode);
// Accepts "none", "minmax", "zscore". Throws Error(kInvalidArgument).
Normalization parse_normalization(std::string_view text);

// One typed column. Numeric values use NaN as the missing marker (the CSV
// number grammar never produces NaN); categorical values are dictionary
// codes into categories(), with kMissingCode for missing cells.
class Column {
 public:
  static constexpr std::int32_t kMissingCode = -1;

  static Column numeric(std::string name, std::vector<double> values);
  static Column categorical(std::string name,
                            std::vector<std::optional<std::string>> values);

  const std::string& name() const { return name_; }
  ColumnKind kind() const { return kind_; }
  bool is_numeric() const { return kind_ == ColumnKind::kNumeric; }
  std::size_t size() const;

  bool is_missing(std::size_t row) const;
  std::size_t missing_count() const;

  // Numeric access. The span includes NaN for missing cells.
  std::span<const double> numbers() const { return numbers_; }
  std::optional<double> number(std::size_t row) const;

  // Categorical access; categories are kept in first-appearance order.
  std::span<const std::int32_t> codes() const { return codes_; }
  const std::vector<std::string>& categories() const { return categories_; }
  std::optional<std::string_view> category(std::size_t row) const;

  Column select_rows(std::span<const std::size_t> rows) const;
  Column with_numbers(std::vector<double> values) const;

  friend bool operator==(const Column& a, const Column& b);

 private:
  std::string name_;
  ColumnKind kind_ = ColumnKind::kNumeric;
  std::vector<double> numbers_;
  std::vector<std::int32_t> codes_;
  std::vector<std::string> categories_;
};

struct ColumnStats {
  double minimum = 0.0;
  double maximum = 0.0;
  double median = 0.0;
  std::size_t count = 0;
  std::size_t missing = 0;

  friend bool operator==(const ColumnStats&, const ColumnStats&) = default;
};

struct Histogram {
  std::string attribute;
  std::vector<double> bin_edges;
  std::vector<std::size_t> counts;

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

// Immutable typed table. Copies are cheap enough for the memory-resident
// sizes this engine targets; every transformation returns a new Dataset.
class Dataset {
 public:
  Dataset(std::vector<Column> columns, std::string source_digest,
          std::size_t dropped_rows = 0);

  const std::vector<Column>& columns() const { return columns_; }
  std::size_t row_count() const { return row_count_; }
  const std::string& source_digest() const { return source_digest_; }
  std::size_t dropped_rows() const { return dropped_rows_; }

  bool has_column(std::string_view name) const;
  // Throws Error(kUnknownAttribute).
  const Column& column(std::string_view name) const;
  // Throws kUnknownAttribute, or kTypeMismatch when the column is categorical.
  const Column& numeric_column(std::string_view name) const;
  // Throws kUnknownAttribute, or kTypeMismatch when the column is numeric.
  const Column& categorical_column(std::string_view name) const;

  // Rows missing a value in any of `attributes` are removed; the number
  // removed is added to dropped_rows().
  Dataset retain_complete(std::span<const std::string> attributes) const;

  Dataset replace_column(Column column) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<Column> columns_;
  std::size_t row_count_ = 0;
  std::string source_digest_;
  std::size_t dropped_rows_ = 0;
};

// True when `cell` is one of the missing markers: empty, NA, N/A
// (case-insensitive, surrounding whitespace ignored).
bool is_missing_marker(std::string_view cell);

// Locale-free decimal parser: optional sign, digits with optional fraction,
// optional exponent. No thousands separators, no inf/nan.
std::optional<double> parse_decimal(std::string_view cell);

Dataset load_csv(std::string_view bytes);

ColumnStats column_stats(const Dataset& dataset, std::string_view attribute,
                         std::optional<std::span<const std::size_t>> subset =
                             std::nullopt);

Histogram histogram(const Dataset& dataset, std::string_view attribute,
                    std::size_t bins);

Dataset normalize_view(const Dataset& dataset,
                       std::span<const std::string> attributes,
                       Normalization mode);

}  // namespace ranklabel
