// Copyright 2026 The modelkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "modelkit/scitype.hpp"

namespace modelkit {

enum class StorageKind { Float, Integer, Boolean, String, Categorical };

std::string_view to_string(StorageKind kind);

/// The complete, ordered set of levels of a categorical variable. Shared
/// between every slice of a column and every distribution predicted for it,
/// so unseen levels survive subsetting and prediction.
using Pool = std::shared_ptr<const std::vector<std::string>>;

Pool make_pool(std::vector<std::string> levels);
std::optional<std::size_t> pool_index(const Pool& pool, std::string_view label);

struct CategoricalCodes {
  std::vector<std::uint32_t> codes;  // 0-based indices into pool
  Pool pool;
  bool ordered = false;
};

/// Immutable typed column with an optional missing-value mask.
class Column {
 public:
  Column() = default;

  static Column floats(std::vector<double> values,
                       std::vector<bool> missing = {});
  static Column integers(std::vector<std::int64_t> values,
                         std::vector<bool> missing = {});
  static Column booleans(std::vector<bool> values,
                         std::vector<bool> missing = {});
  static Column strings(std::vector<std::string> values,
                        std::vector<bool> missing = {});
  static Column categorical(std::vector<std::uint32_t> codes, Pool pool,
                            bool ordered = false,
                            std::vector<bool> missing = {});
  /// Builds a categorical column from labels. The pool is the sorted set of
  /// distinct labels unless `levels` gives an explicit order.
  static Column categorical_from_labels(
      const std::vector<std::string>& labels, bool ordered = false,
      const std::optional<std::vector<std::string>>& levels = std::nullopt);

  StorageKind kind() const;
  std::size_t size() const;

  bool is_missing(std::size_t i) const {
    return !missing_.empty() && missing_[i];
  }
  bool has_missing() const;
  const std::vector<bool>& missing_mask() const { return missing_; }

  const std::vector<double>& float_values() const;
  const std::vector<std::int64_t>& integer_values() const;
  const std::vector<bool>& boolean_values() const;
  const std::vector<std::string>& string_values() const;
  const CategoricalCodes& categorical() const;

  bool is_categorical() const { return kind() == StorageKind::Categorical; }
  const Pool& pool() const { return categorical().pool; }

  /// Float or integer storage widened to doubles; missing entries become NaN.
  std::vector<double> as_doubles() const;
  /// Text rendering of entry i ("" when missing).
  std::string label(std::size_t i) const;
  std::vector<std::string> labels() const;

  Column select(std::span<const std::size_t> rows) const;

  friend bool operator==(const Column& a, const Column& b);

 private:
  using Storage =
      std::variant<std::vector<double>, std::vector<std::int64_t>,
                   std::vector<bool>, std::vector<std::string>,
                   CategoricalCodes>;

  Column(Storage storage, std::vector<bool> missing);

  Storage storage_ = std::vector<double>{};
  std::vector<bool> missing_;
};

/// Scientific type of a column under the fixed convention:
/// floats → Continuous, integers → Count, booleans → Multiclass,
/// strings → Textual, categorical → Multiclass or OrderedFactor.
SciType scitype_of(const Column& column);

/// Recast a column so that scitype_of(result).tag == target. `levels` fixes
/// the pool order when coercing to a Finite type.
Column coerce(const Column& column, Tag target,
              const std::optional<std::vector<std::string>>& levels =
                  std::nullopt);

/// Shortest round-trip decimal rendering used for labels and Textual output.
std::string render_number(double value);

}  // namespace modelkit
