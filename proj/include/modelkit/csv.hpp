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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "modelkit/table.hpp"

namespace modelkit {

struct CsvOptions {
  bool header = true;
  /// Columns coerced to Multiclass after storage inference.
  std::vector<std::string> categorical_columns;
};

/// Reads a rectangular CSV file (comma separator, double-quoted fields with
/// "" escapes, LF or CRLF line ends). Storage is inferred per column:
/// integer if every non-empty field parses as an integer, else float if every
/// one parses as a float, else string. Empty fields are missing values.
/// Without a header, columns are named x1, x2, ...
Table read_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Same as read_csv but over in-memory text.
Table parse_csv(std::string_view text, const CsvOptions& options = {});

}  // namespace modelkit
