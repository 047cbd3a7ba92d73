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

#include "ranklabel/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_map>

#include "ranklabel/digest.hpp"
#include "ranklabel/error.hpp"
#include "ranklabel/kernels.hpp"

namespace ranklabel {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t extra = 0;
    if (c < 0x80) {
      extra = 0;
    } else if ((c & 0xE0) == 0xC0 && c >= 0xC2) {
      extra = 1;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
    } else if ((c & 0xF8) == 0xF0 && c <= 0xF4) {
      extra = 3;
    } else {
      return false;
    }
    if (i + extra >= s.size() && extra > 0) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
    }
    i += extra + 1;
  }
  return true;
}

// RFC-4180 records: comma-delimited, double-quote quoting with "" escapes,
// CRLF or LF terminators, quoted fields may span lines. A terminator at end
// of input does not start a new record.
std::vector<std::vector<std::string>> parse_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;

  const auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  const auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field_started || trim(field).empty()) {
          field.clear();
          in_quotes = true;
        } else {
          field.push_back(c);
        }
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        end_record();
        break;
      case '\n':
        end_record();
        break;
      default:
        field.push_back(c);
        field_started = true;
        break;
    }
  }
  if (in_quotes) {
    throw Error(ErrorCode::kInvalidDataset, "unterminated quoted field");
  }
  if (field_started || !record.empty()) end_record();
  return records;
}

}  // namespace

std::string_view column_kind_name(ColumnKind kind) {
  return kind == ColumnKind::kNumeric ? "numeric" : "categorical";
}

std::string_view normalization_name(Normalization mode) {
  switch (mode) {
    case Normalization::kNone: return "none";
    case Normalization::kMinMax: return "minmax";
    case Normalization::kZScore: return "zscore";
  }
  return "none";
}

Normalization parse_normalization(std::string_view text) {
  if (text == "none") return Normalization::kNone;
  if (text == "minmax") return Normalization::kMinMax;
  if (text == "zscore") return Normalization::kZScore;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown normalization '" + std::string(text) +
                  "' (expected none, minmax or zscore)");
}

// -- Column -----------------------------------------------------------------

Column Column::numeric(std::string name, std::vector<double> values) {
  Column c;
  c.name_ = std::move(name);
  c.kind_ = ColumnKind::kNumeric;
  c.numbers_ = std::move(values);
  return c;
}

Column Column::categorical(std::string name,
                           std::vector<std::optional<std::string>> values) {
  Column c;
  c.name_ = std::move(name);
  c.kind_ = ColumnKind::kCategorical;
  c.codes_.reserve(values.size());
  std::unordered_map<std::string, std::int32_t> index;
  for (auto& v : values) {
    if (!v) {
      c.codes_.push_back(kMissingCode);
      continue;
    }
    auto [it, inserted] =
        index.try_emplace(*v, static_cast<std::int32_t>(c.categories_.size()));
    if (inserted) c.categories_.push_back(*v);
    c.codes_.push_back(it->second);
  }
  return c;
}

std::size_t Column::size() const {
  return is_numeric() ? numbers_.size() : codes_.size();
}

bool Column::is_missing(std::size_t row) const {
  return is_numeric() ? std::isnan(numbers_[row]) : codes_[row] == kMissingCode;
}

std::size_t Column::missing_count() const {
  std::size_t n = 0;
  for (std::size_t r = 0; r < size(); ++r) n += is_missing(r) ? 1 : 0;
  return n;
}

std::optional<double> Column::number(std::size_t row) const {
  if (!is_numeric() || std::isnan(numbers_[row])) return std::nullopt;
  return numbers_[row];
}

std::optional<std::string_view> Column::category(std::size_t row) const {
  if (is_numeric() || codes_[row] == kMissingCode) return std::nullopt;
  return categories_[static_cast<std::size_t>(codes_[row])];
}

Column Column::select_rows(std::span<const std::size_t> rows) const {
  if (is_numeric()) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (std::size_t r : rows) out.push_back(numbers_[r]);
    return numeric(name_, std::move(out));
  }
  std::vector<std::optional<std::string>> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) {
    auto v = category(r);
    out.push_back(v ? std::optional<std::string>(*v) : std::nullopt);
  }
  return categorical(name_, std::move(out));
}

Column Column::with_numbers(std::vector<double> values) const {
  return numeric(name_, std::move(values));
}

bool operator==(const Column& a, const Column& b) {
  if (a.name_ != b.name_ || a.kind_ != b.kind_ || a.size() != b.size()) {
    return false;
  }
  if (a.is_numeric()) {
    for (std::size_t r = 0; r < a.size(); ++r) {
      const double x = a.numbers_[r];
      const double y = b.numbers_[r];
      if (!(x == y || (std::isnan(x) && std::isnan(y)))) return false;
    }
    return true;
  }
  return a.codes_ == b.codes_ && a.categories_ == b.categories_;
}

// -- Dataset ----------------------------------------------------------------

Dataset::Dataset(std::vector<Column> columns, std::string source_digest,
                 std::size_t dropped_rows)
    : columns_(std::move(columns)),
      source_digest_(std::move(source_digest)),
      dropped_rows_(dropped_rows) {
  if (columns_.empty()) {
    throw Error(ErrorCode::kInvalidDataset, "dataset has no columns");
  }
  row_count_ = columns_.front().size();
  std::set<std::string_view> names;
  for (const auto& c : columns_) {
    if (c.name().empty()) {
      throw Error(ErrorCode::kInvalidDataset, "empty column name");
    }
    if (!names.insert(c.name()).second) {
      throw Error(ErrorCode::kInvalidDataset,
                  "duplicate column name '" + c.name() + "'");
    }
    if (c.size() != row_count_) {
      throw Error(ErrorCode::kInvalidDataset,
                  "column '" + c.name() + "' has inconsistent length");
    }
  }
}

bool Dataset::has_column(std::string_view name) const {
  return std::any_of(columns_.begin(), columns_.end(),
                     [&](const Column& c) { return c.name() == name; });
}

const Column& Dataset::column(std::string_view name) const {
  for (const auto& c : columns_) {
    if (c.name() == name) return c;
  }
  throw Error(ErrorCode::kUnknownAttribute,
              "unknown attribute '" + std::string(name) + "'");
}

const Column& Dataset::numeric_column(std::string_view name) const {
  const Column& c = column(name);
  if (!c.is_numeric()) {
    throw Error(ErrorCode::kTypeMismatch,
                "attribute '" + std::string(name) + "' is not numeric");
  }
  return c;
}

const Column& Dataset::categorical_column(std::string_view name) const {
  const Column& c = column(name);
  if (c.is_numeric()) {
    throw Error(ErrorCode::kTypeMismatch,
                "attribute '" + std::string(name) + "' is not categorical");
  }
  return c;
}

Dataset Dataset::retain_complete(std::span<const std::string> attributes) const {
  std::vector<const Column*> required;
  for (const auto& a : attributes) required.push_back(&column(a));
  std::vector<std::size_t> keep;
  keep.reserve(row_count_);
  for (std::size_t r = 0; r < row_count_; ++r) {
    const bool complete = std::none_of(
        required.begin(), required.end(),
        [r](const Column* c) { return c->is_missing(r); });
    if (complete) keep.push_back(r);
  }
  if (keep.size() == row_count_) return *this;
  std::vector<Column> cols;
  cols.reserve(columns_.size());
  for (const auto& c : columns_) cols.push_back(c.select_rows(keep));
  return Dataset(std::move(cols), source_digest_,
                 dropped_rows_ + (row_count_ - keep.size()));
}

Dataset Dataset::replace_column(Column column) const {
  std::vector<Column> cols = columns_;
  for (auto& c : cols) {
    if (c.name() == column.name()) {
      c = std::move(column);
      return Dataset(std::move(cols), source_digest_, dropped_rows_);
    }
  }
  throw Error(ErrorCode::kUnknownAttribute,
              "unknown attribute '" + column.name() + "'");
}

// -- Parsing ----------------------------------------------------------------

bool is_missing_marker(std::string_view cell) {
  cell = trim(cell);
  if (cell.empty()) return true;
  const auto upper = [](char c) {
    return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
  };
  std::string u;
  for (char c : cell) u.push_back(upper(c));
  return u == "NA" || u == "N/A";
}

std::optional<double> parse_decimal(std::string_view cell) {
  cell = trim(cell);
  std::size_t i = 0;
  const auto digits = [&] {
    const std::size_t start = i;
    while (i < cell.size() && cell[i] >= '0' && cell[i] <= '9') ++i;
    return i - start;
  };
  if (i < cell.size() && (cell[i] == '+' || cell[i] == '-')) ++i;
  const std::size_t int_digits = digits();
  std::size_t frac_digits = 0;
  if (i < cell.size() && cell[i] == '.') {
    ++i;
    frac_digits = digits();
  }
  if (int_digits + frac_digits == 0) return std::nullopt;
  if (i < cell.size() && (cell[i] == 'e' || cell[i] == 'E')) {
    ++i;
    if (i < cell.size() && (cell[i] == '+' || cell[i] == '-')) ++i;
    if (digits() == 0) return std::nullopt;
  }
  if (i != cell.size()) return std::nullopt;

  // from_chars rejects a leading '+'.
  std::string_view body = cell;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double value = 0.0;
  const auto res =
      std::from_chars(body.data(), body.data() + body.size(), value);
  if (res.ec != std::errc() || res.ptr != body.data() + body.size()) {
    return std::nullopt;
  }
  return value;
}

Dataset load_csv(std::string_view bytes) {
  const std::string digest = sha256_hex(bytes);
  std::string_view text = bytes;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  if (!valid_utf8(text)) {
    throw Error(ErrorCode::kInvalidDataset, "input is not valid UTF-8");
  }
  if (trim(text).empty()) {
    throw Error(ErrorCode::kInvalidDataset, "empty input");
  }

  auto records = parse_records(text);
  if (records.size() < 2) {
    throw Error(ErrorCode::kInvalidDataset, "no data rows after header");
  }
  const auto& header = records.front();
  const std::size_t width = header.size();
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != width) {
      throw Error(ErrorCode::kMalformedRow,
                  "row " + std::to_string(r - 1) + " has " +
                      std::to_string(records[r].size()) + " cells, expected " +
                      std::to_string(width))
          .with_row(r - 1);
    }
  }

  const std::size_t rows = records.size() - 1;
  std::vector<Column> columns;
  columns.reserve(width);
  for (std::size_t c = 0; c < width; ++c) {
    std::string name(trim(header[c]));
    std::vector<double> numbers(rows, kMissing);
    bool numeric = true;
    for (std::size_t r = 0; r < rows && numeric; ++r) {
      const std::string& cell = records[r + 1][c];
      if (is_missing_marker(cell)) continue;
      if (auto v = parse_decimal(cell)) {
        numbers[r] = *v;
      } else {
        numeric = false;
      }
    }
    if (numeric) {
      columns.push_back(Column::numeric(std::move(name), std::move(numbers)));
      continue;
    }
    std::vector<std::optional<std::string>> tokens(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      const std::string& cell = records[r + 1][c];
      if (!is_missing_marker(cell)) tokens[r] = std::string(trim(cell));
    }
    columns.push_back(Column::categorical(std::move(name), std::move(tokens)));
  }
  return Dataset(std::move(columns), digest);
}

// -- Statistics -------------------------------------------------------------

namespace {

std::vector<double> present_values(const Column& col,
                                   std::optional<std::span<const std::size_t>>
                                       subset,
                                   std::size_t& missing) {
  std::vector<double> out;
  missing = 0;
  const auto take = [&](std::size_t r) {
    if (r >= col.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "row index " + std::to_string(r) + " out of range");
    }
    const double v = col.numbers()[r];
    if (std::isnan(v)) {
      ++missing;
    } else {
      out.push_back(v);
    }
  };
  if (subset) {
    out.reserve(subset->size());
    for (std::size_t r : *subset) take(r);
  } else {
    out.reserve(col.size());
    for (std::size_t r = 0; r < col.size(); ++r) take(r);
  }
  return out;
}

}  // namespace

ColumnStats column_stats(const Dataset& dataset, std::string_view attribute,
                         std::optional<std::span<const std::size_t>> subset) {
  const Column& col = dataset.numeric_column(attribute);
  std::size_t missing = 0;
  std::vector<double> values = present_values(col, subset, missing);
  if (values.empty()) {
    throw Error(ErrorCode::kEmptyColumn,
                "attribute '" + std::string(attribute) +
                    "' has no non-missing values");
  }
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  ColumnStats s;
  s.minimum = values.front();
  s.maximum = values.back();
  s.median = (n % 2 == 1) ? values[n / 2]
                          : (values[n / 2 - 1] + values[n / 2]) / 2.0;
  s.count = n;
  s.missing = missing;
  return s;
}

Histogram histogram(const Dataset& dataset, std::string_view attribute,
                    std::size_t bins) {
  if (bins == 0) {
    throw Error(ErrorCode::kInvalidArgument, "bins must be at least 1");
  }
  const Column& col = dataset.numeric_column(attribute);
  const auto values = col.numbers();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  std::size_t present = 0;
  for (double v : values) {
    if (std::isnan(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    ++present;
  }
  if (present == 0) {
    throw Error(ErrorCode::kEmptyColumn,
                "attribute '" + std::string(attribute) +
                    "' has no non-missing values");
  }

  Histogram h;
  h.attribute = std::string(attribute);
  if (lo == hi) {
    h.bin_edges = {lo, hi};
    h.counts = {present};
    return h;
  }
  h.bin_edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    h.bin_edges[i] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  }
  h.bin_edges.back() = hi;
  h.counts = kernels::parallel::histogram_counts(values, h.bin_edges);
  return h;
}

Dataset normalize_view(const Dataset& dataset,
                       std::span<const std::string> attributes,
                       Normalization mode) {
  Dataset out = dataset;
  for (const auto& name : attributes) {
    const Column& col = dataset.numeric_column(name);
    if (mode == Normalization::kNone) continue;

    const auto in = col.numbers();
    double center = 0.0;
    double spread = 0.0;
    double constant_value = 0.0;
    std::size_t n = 0;
    if (mode == Normalization::kMinMax) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -std::numeric_limits<double>::infinity();
      for (double v : in) {
        if (std::isnan(v)) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        ++n;
      }
      center = lo;
      spread = hi - lo;
      constant_value = 0.5;
    } else {
      double sum = 0.0;
      for (double v : in) {
        if (std::isnan(v)) continue;
        sum += v;
        ++n;
      }
      const double mean = n ? sum / static_cast<double>(n) : 0.0;
      double ss = 0.0;
      for (double v : in) {
        if (!std::isnan(v)) ss += (v - mean) * (v - mean);
      }
      center = mean;
      spread = n ? std::sqrt(ss / static_cast<double>(n)) : 0.0;
      constant_value = 0.0;
    }
    if (n == 0) continue;

    std::vector<double> mapped(in.size());
    if (spread > 0.0) {
      kernels::parallel::affine_map(in, center, spread, mapped);
    } else {
      for (std::size_t r = 0; r < in.size(); ++r) {
        mapped[r] = std::isnan(in[r]) ? kMissing : constant_value;
      }
    }
    out = out.replace_column(col.with_numbers(std::move(mapped)));
  }
  return out;
}

}  // namespace ranklabel
