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

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modelkit/network.hpp"

namespace modelkit {

/// A learning network declared for export as a standalone model. Each
/// machine is attached to a named component slot whose default model
/// becomes a hyperparameter of the exported model.
class Blueprint {
 public:
  Blueprint(std::string name, PredictionKind kind);

  /// The feature source (role input); created on first use.
  const SourcePtr& input();
  /// The target source (role target); created on first use.
  const SourcePtr& target();

  /// Declares `slot` with `default_model` on first use and binds a machine
  /// to it. A slot may back several machines.
  MachinePtr machine(const std::string& slot, const Model& default_model,
                     std::vector<NodePtr> args);
  MachinePtr machine(const std::string& slot, std::vector<NodePtr> args);

  void terminal(Operation op, NodePtr n);

  void set_input_scitypes(std::vector<Tag> tags) { inputs_ = std::move(tags); }
  void set_target_scitype(std::optional<Tag> tag) { target_tag_ = tag; }

  /// Raises InvalidBlueprint when a terminal is missing, the kind has no
  /// matching terminal, or a reachable machine has no slot.
  void validate() const;

  const std::string& name() const { return name_; }
  PredictionKind kind() const { return kind_; }
  const Params& slots() const { return slots_; }
  const std::vector<Tag>& input_scitypes() const { return inputs_; }
  const std::optional<Tag>& target_scitype() const { return target_tag_; }

 private:
  friend class CompositeType;

  std::string name_;
  PredictionKind kind_;
  SourcePtr input_;
  SourcePtr target_;
  Params slots_;
  std::vector<std::pair<MachinePtr, std::string>> machine_slots_;
  std::vector<std::pair<Operation, NodePtr>> terminals_;
  std::vector<Tag> inputs_{Tag::Known};
  std::optional<Tag> target_tag_;
};

/// A concrete network built from a blueprint: the learned state of an
/// exported composite.
struct NetworkInstance {
  SourcePtr input;
  SourcePtr target;
  std::vector<std::pair<MachinePtr, std::string>> machine_slots;
  std::vector<std::pair<Operation, NodePtr>> terminals;

  NodePtr terminal(Operation op) const;
  std::vector<NodePtr> terminal_nodes() const;
  /// Deep copy with machine state preserved.
  NetworkInstance clone() const;
};

struct CompositeFit : State {
  NetworkInstance network;
};

struct CompositeReport : State {
  TrainingLog log;
};

/// Exports `blueprint` (validated, then copied) as a model kind whose
/// hyperparameters are the component slots.
std::shared_ptr<const ModelType> export_blueprint(const Blueprint& blueprint);
/// Shorthand for `export_blueprint(blueprint)->make()`.
Model export_model(const Blueprint& blueprint);

/// Transformers applied in sequence, then an optional final predictor.
/// Slots are named after the steps.
Blueprint linear_pipeline(const std::string& name,
                          const std::vector<std::pair<std::string, Model>>& steps);

/// Trains `regressor` on the target transformed by `target_transformer`
/// (a column transformer with an inverse) and maps predictions back.
/// Slots: "regressor", "target_transformer".
Blueprint target_transformed_regressor(const std::string& name,
                                       const Model& regressor,
                                       const Model& target_transformer);

}  // namespace modelkit
