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

#include "modelkit/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "modelkit/error.hpp"

namespace modelkit {

namespace {

struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line on which the record starts
};

std::vector<Record> split_records(std::string_view text) {
  std::vector<Record> records;
  std::size_t pos = 0;
  std::size_t line = 1;
  const std::size_t n = text.size();
  while (pos < n) {
    Record rec;
    rec.line = line;
    std::string field;
    bool end_of_record = false;
    while (!end_of_record) {
      field.clear();
      if (pos < n && text[pos] == '"') {
        ++pos;
        bool closed = false;
        while (pos < n) {
          char c = text[pos];
          if (c == '"') {
            if (pos + 1 < n && text[pos + 1] == '"') {
              field += '"';
              pos += 2;
            } else {
              ++pos;
              closed = true;
              break;
            }
          } else {
            if (c == '\n') ++line;
            field += c;
            ++pos;
          }
        }
        if (!closed) {
          fail(ErrorCode::ParseError,
               "parse error at line " + std::to_string(rec.line) +
                   ", column " + std::to_string(rec.fields.size() + 1) +
                   ": unterminated quoted field");
        }
        if (pos < n && text[pos] != ',' && text[pos] != '\n' &&
            text[pos] != '\r') {
          fail(ErrorCode::ParseError,
               "parse error at line " + std::to_string(line) + ", column " +
                   std::to_string(rec.fields.size() + 1) +
                   ": unexpected character after closing quote");
        }
      } else {
        while (pos < n && text[pos] != ',' && text[pos] != '\n' &&
               text[pos] != '\r') {
          if (text[pos] == '"') {
            fail(ErrorCode::ParseError,
                 "parse error at line " + std::to_string(line) + ", column " +
                     std::to_string(rec.fields.size() + 1) +
                     ": quote inside unquoted field");
          }
          field += text[pos++];
        }
      }
      rec.fields.push_back(field);
      if (pos >= n) {
        end_of_record = true;
      } else if (text[pos] == ',') {
        ++pos;
      } else {
        if (text[pos] == '\r') ++pos;
        if (pos < n && text[pos] == '\n') ++pos;
        ++line;
        end_of_record = true;
      }
    }
    // Blank lines carry no record.
    if (rec.fields.size() == 1 && rec.fields[0].empty()) continue;
    records.push_back(std::move(rec));
  }
  return records;
}

bool parses_as_integer(const std::string& s, std::int64_t& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last && first != last;
}

bool parses_as_float(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last && first != last;
}

Column infer_column(const std::vector<std::string>& fields) {
  const std::size_t n = fields.size();
  std::vector<bool> missing(n, false);
  bool any_present = false;
  for (std::size_t i = 0; i < n; ++i) {
    missing[i] = fields[i].empty();
    any_present = any_present || !missing[i];
  }
  if (any_present) {
    std::vector<std::int64_t> ints(n, 0);
    bool all_int = true;
    for (std::size_t i = 0; i < n && all_int; ++i) {
      if (!missing[i]) all_int = parses_as_integer(fields[i], ints[i]);
    }
    if (all_int) return Column::integers(std::move(ints), missing);

    std::vector<double> floats(n, 0.0);
    bool all_float = true;
    for (std::size_t i = 0; i < n && all_float; ++i) {
      if (!missing[i]) all_float = parses_as_float(fields[i], floats[i]);
    }
    if (all_float) return Column::floats(std::move(floats), missing);
  }
  return Column::strings(fields, missing);
}

}  // namespace

Table parse_csv(std::string_view text, const CsvOptions& options) {
  std::vector<Record> records = split_records(text);
  std::vector<std::string> names;
  std::size_t first_data = 0;
  if (options.header) {
    if (records.empty()) return Table();
    names = records.front().fields;
    first_data = 1;
  }
  const std::size_t width =
      options.header ? names.size()
                     : (records.empty() ? 0 : records.front().fields.size());
  if (!options.header) {
    for (std::size_t j = 0; j < width; ++j) {
      names.push_back("x" + std::to_string(j + 1));
    }
  }
  std::vector<std::vector<std::string>> cells(width);
  for (std::size_t r = first_data; r < records.size(); ++r) {
    const Record& rec = records[r];
    if (rec.fields.size() != width) {
      fail(ErrorCode::RaggedRows,
           "ragged row at line " + std::to_string(rec.line) + ": expected " +
               std::to_string(width) + " fields, found " +
               std::to_string(rec.fields.size()));
    }
    for (std::size_t j = 0; j < width; ++j) {
      cells[j].push_back(rec.fields[j]);
    }
  }
  std::vector<Column> columns;
  columns.reserve(width);
  for (auto& c : cells) columns.push_back(infer_column(c));
  Table table(std::move(names), std::move(columns));
  for (const auto& name : options.categorical_columns) {
    table = table.with_column(name, coerce(table.column(name), Tag::Multiclass));
  }
  return table;
}

Table read_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::IoError, "cannot open file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(ErrorCode::IoError, "error reading file: " + path.string());
  return parse_csv(buf.str(), options);
}

}  // namespace modelkit
