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

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "modelkit/error.hpp"
#include "modelkit/table.hpp"

// Asserts that `expr` throws modelkit::Error carrying `code`.
#define CHECK_ERROR_CODE(expr, expected_code)                          \
  do {                                                                 \
    bool thrown_ = false;                                              \
    try {                                                              \
      (void)(expr);                                                    \
    } catch (const ::modelkit::Error& e_) {                            \
      thrown_ = true;                                                  \
      CHECK_MESSAGE(e_.code() == (expected_code), e_.what());          \
    }                                                                  \
    CHECK_MESSAGE(thrown_, "no modelkit::Error thrown by " #expr);     \
  } while (0)

namespace testing {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string fixture(const std::string& name) {
  return std::string(MODELKIT_FIXTURES) + "/" + name;
}

inline modelkit::Table table_of(
    std::vector<std::pair<std::string, std::vector<double>>> cols) {
  std::vector<std::string> names;
  std::vector<modelkit::Column> columns;
  for (auto& [n, v] : cols) {
    names.push_back(n);
    columns.push_back(modelkit::Column::floats(std::move(v)));
  }
  return modelkit::Table(std::move(names), std::move(columns));
}

inline double max_abs_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace testing
