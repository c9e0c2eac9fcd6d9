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

#include "modelkit/machine.hpp"

#include <algorithm>
#include <atomic>
#include <unordered_set>

#include "modelkit/error.hpp"

namespace modelkit {

std::uint64_t next_creation_id() {
  static std::atomic<std::uint64_t> counter{0};
  return ++counter;
}

Source::Source(Data content, SourceRole role)
    : Node({}), content_(std::move(content)), role_(role) {}

void Source::rebind(Data content) {
  content_ = std::move(content);
  ++version_;
}

Data Source::evaluate(const Data* Xnew) const {
  if (Xnew && role_ == SourceRole::Input) return *Xnew;
  if (is_empty(content_)) fail(ErrorCode::EmptySource, "source is empty");
  return content_;
}

NodePtr Source::clone(GraphCloner&) const {
  return std::make_shared<Source>(*this);
}

SourcePtr source(Data content, SourceRole role) {
  return std::make_shared<Source>(std::move(content), role);
}

void rebind(const SourcePtr& s, Data content) { s->rebind(std::move(content)); }

std::string_view to_string(FitAction action) {
  switch (action) {
    case FitAction::Fitted: return "fitted";
    case FitAction::Updated: return "updated";
    case FitAction::Skipped: return "skipped";
  }
  return "?";
}

Machine::Machine(std::shared_ptr<Model> model, std::vector<NodePtr> args)
    : id_(next_creation_id()), model_(std::move(model)), args_(std::move(args)) {
  if (!model_) fail(ErrorCode::InvalidArgument, "machine needs a model");
  const bool supervised = model_->type().is_supervised();
  const std::size_t want = supervised ? 2 : 1;
  if (args_.size() != want) {
    fail(ErrorCode::ArityMismatch,
         model_->kind() + (supervised ? " needs features and a target"
                                      : " takes exactly one argument") +
             ", got " + std::to_string(args_.size()) + " argument(s)");
  }
  for (const auto& a : args_) {
    if (!a) fail(ErrorCode::UnresolvableArgs, "machine argument is null");
  }
}

std::vector<const Source*> Machine::ancestor_sources() const {
  std::vector<const Source*> out;
  std::unordered_set<const Node*> seen_nodes;
  std::unordered_set<const Machine*> seen_machines{this};
  std::vector<const Node*> stack;
  for (const auto& a : args_) stack.push_back(a.get());
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (!seen_nodes.insert(n).second) continue;
    if (const auto* s = dynamic_cast<const Source*>(n)) out.push_back(s);
    for (const auto& a : n->args()) stack.push_back(a.get());
    if (const MachinePtr* m = n->machine()) {
      if (seen_machines.insert(m->get()).second) {
        for (const auto& a : (*m)->args()) stack.push_back(a.get());
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Source* a, const Source* b) { return a->id() < b->id(); });
  return out;
}

bool Machine::sources_changed() const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> now;
  for (const Source* s : ancestor_sources()) now.emplace_back(s->id(), s->version());
  return now != source_versions_;
}

FitAction Machine::fit(std::optional<std::vector<std::size_t>> rows, bool force,
                       bool upstream_changed) {
  const bool refit = !trained_ || force || rows != last_rows_ ||
                     upstream_changed || sources_changed();
  if (!refit && *snapshot_ == *model_) return FitAction::Skipped;

  Data X = args_[0]->call();
  std::optional<Column> y;
  if (args_.size() > 1) {
    Data yd = args_[1]->call();
    if (!std::holds_alternative<Column>(yd)) {
      fail(ErrorCode::UnresolvableArgs,
           model_->kind() + ": target argument evaluated to a " + kind_name(yd));
    }
    y = std::get<Column>(std::move(yd));
  }
  if (rows) {
    X = select_rows(X, *rows);
    if (y) y = y->select(*rows);
  }
  const Column* yp = y ? &*y : nullptr;
  output_ = refit ? modelkit::fit(*model_, X, yp)
                  : modelkit::update(*model_, output_, X, yp);

  snapshot_ = *model_;
  last_rows_ = std::move(rows);
  source_versions_.clear();
  for (const Source* s : ancestor_sources()) {
    source_versions_.emplace_back(s->id(), s->version());
  }
  ++fit_count_;
  trained_ = true;
  return refit ? FitAction::Fitted : FitAction::Updated;
}

Data Machine::apply(Operation op, const Data& X) const {
  if (!trained_) {
    fail(ErrorCode::NotTrained,
         "machine for " + model_->kind() + " has not been trained");
  }
  return modelkit::apply(op, *model_, output_.fitresult, X);
}

MachinePtr Machine::clone(GraphCloner& cloner) const {
  auto copy = std::shared_ptr<Machine>(new Machine(*this));
  copy->model_ = std::make_shared<Model>(*model_);
  for (auto& a : copy->args_) a = cloner.node(a);
  return copy;
}

MachinePtr machine(const Model& model, NodePtr X) {
  return machine(std::make_shared<Model>(model), {std::move(X)});
}

MachinePtr machine(const Model& model, NodePtr X, NodePtr y) {
  return machine(std::make_shared<Model>(model), {std::move(X), std::move(y)});
}

MachinePtr machine(std::shared_ptr<Model> model, std::vector<NodePtr> args) {
  return std::make_shared<Machine>(std::move(model), std::move(args));
}

MachinePtr machine(const Model& model, Data X) {
  return machine(model, NodePtr(source(std::move(X), SourceRole::Input)));
}

MachinePtr machine(const Model& model, Data X, Column y) {
  return machine(model, NodePtr(source(std::move(X), SourceRole::Input)),
                 NodePtr(source(std::move(y), SourceRole::Target)));
}

Data predict(const Machine& m, const Data& X) {
  return m.apply(Operation::Predict, X);
}
Data transform(const Machine& m, const Data& X) {
  return m.apply(Operation::Transform, X);
}
Data inverse_transform(const Machine& m, const Data& X) {
  return m.apply(Operation::InverseTransform, X);
}

NodePtr GraphCloner::node(const NodePtr& n) {
  if (auto it = nodes_.find(n.get()); it != nodes_.end()) return it->second;
  NodePtr copy = n->clone(*this);
  nodes_.emplace(n.get(), copy);
  return copy;
}

MachinePtr GraphCloner::machine(const MachinePtr& m) {
  if (auto it = machines_.find(m.get()); it != machines_.end()) return it->second;
  MachinePtr copy = m->clone(*this);
  machines_.emplace(m.get(), copy);
  return copy;
}

}  // namespace modelkit
