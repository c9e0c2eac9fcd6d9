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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modelkit/model.hpp"
#include "modelkit/table.hpp"

namespace modelkit {

/// What is known about a model kind without constructing it.
struct ModelMetadata {
  std::string name;
  std::string package = "native";
  std::vector<Tag> input_scitypes;  // acceptable feature column scitypes
  std::optional<Tag> target_scitype;
  PredictionKind prediction_kind = PredictionKind::Deterministic;
  bool supervised = true;
  std::string load_path;  // factory key, e.g. "zoo:RidgeRegressor"

  friend bool operator==(const ModelMetadata&, const ModelMetadata&) = default;
};

ModelMetadata metadata_of(const ModelType& type);

class Registry {
 public:
  /// Throws DuplicateName.
  void add(ModelMetadata metadata);

  const std::vector<ModelMetadata>& entries() const { return entries_; }
  const ModelMetadata* find(std::string_view name) const;
  std::vector<std::string> names() const;  // sorted

  /// Models whose metadata accepts every feature scitype and, for a
  /// supervised query, whose target scitype subsumes `target`. A query
  /// without a target returns only unsupervised models. Sorted by name;
  /// touches metadata only.
  std::vector<ModelMetadata> matching(const std::vector<SciType>& features,
                                      const std::optional<SciType>& target) const;
  std::vector<ModelMetadata> matching(const Schema& schema,
                                      const std::optional<SciType>& target) const;

  /// Fresh model with default hyperparameters. Throws UnknownModel.
  Model instantiate(std::string_view name) const;

  friend bool operator==(const Registry&, const Registry&) = default;

 private:
  std::vector<ModelMetadata> entries_;
};

/// Metadata for every zoo model, in zoo order.
Registry builtin_registry();

/// Record-per-model text: `[model]` headers followed by `key = value`
/// lines; `#` starts a comment line.
std::string serialize_registry(const Registry& registry);
/// Throws MalformedFile with the offending line number.
Registry parse_registry(std::string_view text);
Registry load_registry(const std::string& path);
void save_registry(const Registry& registry, const std::string& path);

/// Number of models the registry factory has constructed.
std::size_t factory_invocations();
void reset_factory_invocations();

}  // namespace modelkit
