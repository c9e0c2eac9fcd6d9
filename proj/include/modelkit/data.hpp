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
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "modelkit/column.hpp"
#include "modelkit/distributions.hpp"
#include "modelkit/table.hpp"

namespace modelkit {

/// How a model's predict output is represented. Transformers have no
/// predict; their outputs come from transform.
enum class PredictionKind { Deterministic, Probabilistic, Transformer };

std::string_view to_string(PredictionKind kind);

using FiniteDistributions = std::vector<UnivariateFinite>;
using NormalDistributions = std::vector<NormalDist>;

/// Anything that can flow along a learning-network edge: feature tables,
/// single columns (targets, deterministic predictions), or one distribution
/// per row from a probabilistic predictor. monostate marks "no data".
using Data = std::variant<std::monostate, Table, Column, FiniteDistributions,
                          NormalDistributions>;

bool is_empty(const Data& data);
std::size_t nrows(const Data& data);
Data select_rows(const Data& data, std::span<const std::size_t> rows);

/// Short kind name for diagnostics: "table", "column", ...
std::string kind_name(const Data& data);

const Table& as_table(const Data& data);
const Column& as_column(const Data& data);
const FiniteDistributions& as_finite(const Data& data);
const NormalDistributions& as_normal(const Data& data);

std::vector<std::size_t> all_rows(std::size_t n);

}  // namespace modelkit
