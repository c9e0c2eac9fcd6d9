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

#include "modelkit/data.hpp"

#include <numeric>

#include "modelkit/error.hpp"

namespace modelkit {

namespace {

template <class T>
std::vector<T> pick(const std::vector<T>& values,
                    std::span<const std::size_t> rows) {
  std::vector<T> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) {
    if (r >= values.size()) {
      fail(ErrorCode::IndexOutOfBounds,
           "row index " + std::to_string(r) + " out of bounds for " +
               std::to_string(values.size()) + " rows");
    }
    out.push_back(values[r]);
  }
  return out;
}

template <class T>
const T& get_or_fail(const Data& data, const char* want) {
  if (auto* v = std::get_if<T>(&data)) return *v;
  fail(ErrorCode::TypeMismatch,
       std::string("expected ") + want + ", got " + kind_name(data));
}

}  // namespace

std::string_view to_string(PredictionKind kind) {
  switch (kind) {
    case PredictionKind::Deterministic: return "deterministic";
    case PredictionKind::Probabilistic: return "probabilistic";
    case PredictionKind::Transformer: return "transformer";
  }
  return "?";
}

bool is_empty(const Data& data) {
  return std::holds_alternative<std::monostate>(data);
}

std::size_t nrows(const Data& data) {
  struct Visitor {
    std::size_t operator()(std::monostate) const { return 0; }
    std::size_t operator()(const Table& t) const { return t.nrows(); }
    std::size_t operator()(const Column& c) const { return c.size(); }
    std::size_t operator()(const FiniteDistributions& d) const {
      return d.size();
    }
    std::size_t operator()(const NormalDistributions& d) const {
      return d.size();
    }
  };
  return std::visit(Visitor{}, data);
}

Data select_rows(const Data& data, std::span<const std::size_t> rows) {
  struct Visitor {
    std::span<const std::size_t> rows;
    Data operator()(std::monostate) const {
      fail(ErrorCode::EmptySource, "cannot select rows of empty data");
    }
    Data operator()(const Table& t) const { return t.select_rows(rows); }
    Data operator()(const Column& c) const { return c.select(rows); }
    Data operator()(const FiniteDistributions& d) const {
      return pick(d, rows);
    }
    Data operator()(const NormalDistributions& d) const {
      return pick(d, rows);
    }
  };
  return std::visit(Visitor{rows}, data);
}

std::string kind_name(const Data& data) {
  switch (data.index()) {
    case 0: return "empty";
    case 1: return "table";
    case 2: return "column";
    case 3: return "finite distributions";
    case 4: return "normal distributions";
  }
  return "?";
}

const Table& as_table(const Data& data) {
  return get_or_fail<Table>(data, "table");
}
const Column& as_column(const Data& data) {
  return get_or_fail<Column>(data, "column");
}
const FiniteDistributions& as_finite(const Data& data) {
  return get_or_fail<FiniteDistributions>(data, "finite distributions");
}
const NormalDistributions& as_normal(const Data& data) {
  return get_or_fail<NormalDistributions>(data, "normal distributions");
}

std::vector<std::size_t> all_rows(std::size_t n) {
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return rows;
}

}  // namespace modelkit
