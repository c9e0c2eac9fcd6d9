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

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "modelkit/data.hpp"
#include "modelkit/model.hpp"

namespace modelkit {

class Node;
class Source;
class Machine;
class GraphCloner;

using NodePtr = std::shared_ptr<Node>;
using SourcePtr = std::shared_ptr<Source>;
using MachinePtr = std::shared_ptr<Machine>;

/// Monotone creation stamp shared by nodes and machines.
std::uint64_t next_creation_id();

/// A vertex of a learning network. Evaluation is lazy and uncached.
class Node {
 public:
  virtual ~Node() = default;

  std::uint64_t id() const { return id_; }
  const std::vector<NodePtr>& args() const { return args_; }
  /// The machine applied by this node, if any.
  virtual const MachinePtr* machine() const { return nullptr; }
  virtual std::string label() const = 0;

  Data call() const { return evaluate(nullptr); }
  /// Evaluates with every input-role source reading `Xnew`.
  Data call(const Data& Xnew) const { return evaluate(&Xnew); }
  virtual Data evaluate(const Data* Xnew) const = 0;

  virtual NodePtr clone(GraphCloner& cloner) const = 0;

 protected:
  explicit Node(std::vector<NodePtr> args, std::uint64_t id = next_creation_id())
      : id_(id), args_(std::move(args)) {}

  std::uint64_t id_;
  std::vector<NodePtr> args_;
};

enum class SourceRole { Input, Target, Other };

class Source final : public Node {
 public:
  explicit Source(Data content = {}, SourceRole role = SourceRole::Other);

  const Data& content() const { return content_; }
  std::uint64_t version() const { return version_; }
  SourceRole role() const { return role_; }
  void rebind(Data content);

  std::string label() const override { return "source"; }
  Data evaluate(const Data* Xnew) const override;
  NodePtr clone(GraphCloner& cloner) const override;

 private:
  Data content_;
  std::uint64_t version_ = 0;
  SourceRole role_;
};

SourcePtr source(Data content = {}, SourceRole role = SourceRole::Other);
void rebind(const SourcePtr& s, Data content);

enum class FitAction { Fitted, Updated, Skipped };
std::string_view to_string(FitAction action);

/// Binds a model to data providers and owns what training produced.
class Machine {
 public:
  Machine(std::shared_ptr<Model> model, std::vector<NodePtr> args);

  std::uint64_t id() const { return id_; }
  Model& model() { return *model_; }
  const Model& model() const { return *model_; }
  const std::shared_ptr<Model>& model_ptr() const { return model_; }
  const std::vector<NodePtr>& args() const { return args_; }

  /// Retrains as little as possible: a full fit when untrained, forced,
  /// given different rows (nullopt means all rows) or told that upstream
  /// data changed; an update when only the hyperparameters changed;
  /// otherwise nothing.
  FitAction fit(std::optional<std::vector<std::size_t>> rows = std::nullopt,
                bool force = false, bool upstream_changed = false);

  bool trained() const { return trained_; }
  std::size_t fit_count() const { return fit_count_; }
  const FitOutput& output() const { return output_; }
  const FitResult& fitresult() const { return output_.fitresult; }
  const StatePtr& report() const { return output_.report; }
  const std::optional<Model>& snapshot() const { return snapshot_; }
  const std::optional<std::vector<std::size_t>>& last_rows() const {
    return last_rows_;
  }

  Data apply(Operation op, const Data& X) const;

  /// Sources whose content this machine's training data depends on.
  std::vector<const Source*> ancestor_sources() const;

  MachinePtr clone(GraphCloner& cloner) const;

 private:
  Machine(const Machine&) = default;

  bool sources_changed() const;

  std::uint64_t id_;
  std::shared_ptr<Model> model_;
  std::vector<NodePtr> args_;
  FitOutput output_;
  std::optional<Model> snapshot_;
  std::optional<std::vector<std::size_t>> last_rows_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> source_versions_;
  std::size_t fit_count_ = 0;
  bool trained_ = false;
};

/// Checks arity (features, plus target when supervised) and wraps nothing;
/// no data is read.
MachinePtr machine(const Model& model, NodePtr X);
MachinePtr machine(const Model& model, NodePtr X, NodePtr y);
MachinePtr machine(std::shared_ptr<Model> model, std::vector<NodePtr> args);
/// Convenience: plain data is wrapped into input/target sources.
MachinePtr machine(const Model& model, Data X);
MachinePtr machine(const Model& model, Data X, Column y);

Data predict(const Machine& m, const Data& X);
Data transform(const Machine& m, const Data& X);
Data inverse_transform(const Machine& m, const Data& X);

/// Copies a graph, preserving creation ids and machine state. Sharing is
/// preserved: a machine or node reached twice is copied once.
class GraphCloner {
 public:
  NodePtr node(const NodePtr& n);
  MachinePtr machine(const MachinePtr& m);

 private:
  std::unordered_map<const Node*, NodePtr> nodes_;
  std::unordered_map<const Machine*, MachinePtr> machines_;
};

}  // namespace modelkit
