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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modelkit/column.hpp"
#include "modelkit/scitype.hpp"

namespace modelkit {

/// Immutable named columns of equal length.
class Table {
 public:
  Table() = default;
  Table(std::vector<std::string> names, std::vector<Column> columns);

  std::size_t nrows() const { return nrows_; }
  std::size_t ncols() const { return columns_.size(); }

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Column>& columns() const { return columns_; }
  const Column& column(std::size_t index) const { return columns_.at(index); }
  const Column& column(std::string_view name) const;

  std::optional<std::size_t> index_of(std::string_view name) const;
  bool has_column(std::string_view name) const {
    return index_of(name).has_value();
  }

  /// Replaces the named column, or appends it when absent.
  Table with_column(const std::string& name, Column column) const;
  Table without_column(std::string_view name) const;
  Table select_rows(std::span<const std::size_t> rows) const;

  friend bool operator==(const Table&, const Table&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<Column> columns_;
  std::size_t nrows_ = 0;
};

struct Schema {
  std::vector<std::string> names;
  std::vector<StorageKind> machine_types;
  std::vector<SciType> scitypes;
  std::size_t nrows = 0;

  friend bool operator==(const Schema&, const Schema&) = default;
};

Schema schema(const Table& table);

/// Fixed-width `name | machine type | scitype` rendering, one row per column.
std::string format_schema(const Schema& schema);

Table select_rows(const Table& table, std::span<const std::size_t> rows);

/// Splits off the target column: (features, target).
std::pair<Table, Column> split_target(const Table& table,
                                      std::string_view target);

}  // namespace modelkit
