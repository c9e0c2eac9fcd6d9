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

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modelkit/machine.hpp"

namespace modelkit {

/// Applies `op` through a machine to the value of its single argument.
class OperationNode final : public Node {
 public:
  OperationNode(Operation op, MachinePtr machine, NodePtr arg);

  Operation op() const { return op_; }
  const MachinePtr* machine() const override { return &machine_; }
  std::string label() const override;
  Data evaluate(const Data* Xnew) const override;
  NodePtr clone(GraphCloner& cloner) const override;

 private:
  Operation op_;
  MachinePtr machine_;
};

using NodeFunction = std::function<Data(const std::vector<Data>&)>;

/// A pure function of its arguments' values; holds no learned state.
class FunctionNode final : public Node {
 public:
  FunctionNode(std::string label, NodeFunction f, std::vector<NodePtr> args);

  std::string label() const override { return label_; }
  Data evaluate(const Data* Xnew) const override;
  NodePtr clone(GraphCloner& cloner) const override;

 private:
  std::string label_;
  NodeFunction f_;
};

NodePtr node(Operation op, MachinePtr machine, NodePtr arg);
NodePtr fn_node(std::string label, NodeFunction f, std::vector<NodePtr> args);

struct LogEntry {
  MachinePtr machine;
  FitAction action;
};

/// Machines in training order with what each did in one pass.
struct TrainingLog {
  std::vector<LogEntry> entries;

  std::vector<FitAction> actions() const;
  /// One line per entry: `machine<k>(<model kind>) => <action>`, where k
  /// ranks the machine by creation order among the logged machines.
  std::string render() const;
};

/// Every machine needed to call `terminals`, upstream before downstream,
/// ties broken by creation order.
std::vector<MachinePtr> training_order(const std::vector<NodePtr>& terminals);

/// One smart training pass over everything the terminals depend on.
TrainingLog fit_nodes(const std::vector<NodePtr>& terminals, bool force = false,
                      const std::optional<std::vector<std::size_t>>& rows =
                          std::nullopt);
TrainingLog fit_node(const NodePtr& terminal, bool force = false,
                     const std::optional<std::vector<std::size_t>>& rows =
                         std::nullopt);

}  // namespace modelkit
