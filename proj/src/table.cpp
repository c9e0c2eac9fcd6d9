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

#include "modelkit/table.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "modelkit/error.hpp"

namespace modelkit {

Table::Table(std::vector<std::string> names, std::vector<Column> columns)
    : names_(std::move(names)), columns_(std::move(columns)) {
  if (names_.size() != columns_.size()) {
    fail(ErrorCode::LengthMismatch,
         std::to_string(names_.size()) + " names for " +
             std::to_string(columns_.size()) + " columns");
  }
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) {
      fail(ErrorCode::InvalidValue, "duplicate column name '" + n + "'");
    }
  }
  nrows_ = columns_.empty() ? 0 : columns_.front().size();
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if (columns_[j].size() != nrows_) {
      fail(ErrorCode::LengthMismatch,
           "column '" + names_[j] + "' has " +
               std::to_string(columns_[j].size()) + " rows, expected " +
               std::to_string(nrows_));
    }
  }
}

std::optional<std::size_t> Table::index_of(std::string_view name) const {
  for (std::size_t j = 0; j < names_.size(); ++j) {
    if (names_[j] == name) return j;
  }
  return std::nullopt;
}

const Column& Table::column(std::string_view name) const {
  auto j = index_of(name);
  if (!j) fail(ErrorCode::UnknownColumn, "unknown column: " + std::string(name));
  return columns_[*j];
}

Table Table::with_column(const std::string& name, Column column) const {
  auto names = names_;
  auto columns = columns_;
  if (auto j = index_of(name)) {
    columns[*j] = std::move(column);
  } else {
    names.push_back(name);
    columns.push_back(std::move(column));
  }
  return Table(std::move(names), std::move(columns));
}

Table Table::without_column(std::string_view name) const {
  auto j = index_of(name);
  if (!j) fail(ErrorCode::UnknownColumn, "unknown column: " + std::string(name));
  auto names = names_;
  auto columns = columns_;
  names.erase(names.begin() + static_cast<std::ptrdiff_t>(*j));
  columns.erase(columns.begin() + static_cast<std::ptrdiff_t>(*j));
  Table out(std::move(names), std::move(columns));
  if (out.columns_.empty()) out.nrows_ = nrows_;
  return out;
}

Table Table::select_rows(std::span<const std::size_t> rows) const {
  for (std::size_t r : rows) {
    if (r >= nrows_) {
      fail(ErrorCode::IndexOutOfBounds,
           "row index " + std::to_string(r) + " out of bounds for " +
               std::to_string(nrows_) + " rows");
    }
  }
  std::vector<Column> columns;
  columns.reserve(columns_.size());
  for (const auto& c : columns_) columns.push_back(c.select(rows));
  Table out(names_, std::move(columns));
  out.nrows_ = rows.size();
  return out;
}

Schema schema(const Table& table) {
  Schema s;
  s.names = table.names();
  s.nrows = table.nrows();
  for (const auto& c : table.columns()) {
    s.machine_types.push_back(c.kind());
    s.scitypes.push_back(scitype_of(c));
  }
  return s;
}

std::string format_schema(const Schema& schema) {
  std::vector<std::array<std::string, 3>> rows;
  rows.push_back({"name", "machine type", "scitype"});
  for (std::size_t j = 0; j < schema.names.size(); ++j) {
    rows.push_back({schema.names[j],
                    std::string(to_string(schema.machine_types[j])),
                    to_string(schema.scitypes[j])});
  }
  std::array<std::size_t, 3> width{};
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < 3; ++k) {
      width[k] = std::max(width[k], r[k].size());
    }
  }
  auto pad = [](const std::string& s, std::size_t w) {
    return s + std::string(w - s.size(), ' ');
  };
  std::string out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += pad(rows[i][0], width[0]) + " | " + pad(rows[i][1], width[1]) +
           " | " + pad(rows[i][2], width[2]);
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
    if (i == 0) {
      out += std::string(width[0], '-') + "-+-" + std::string(width[1], '-') +
             "-+-" + std::string(width[2], '-') + '\n';
    }
  }
  return out;
}

Table select_rows(const Table& table, std::span<const std::size_t> rows) {
  return table.select_rows(rows);
}

std::pair<Table, Column> split_target(const Table& table,
                                      std::string_view target) {
  const Column& y = table.column(target);
  return {table.without_column(target), y};
}

}  // namespace modelkit
