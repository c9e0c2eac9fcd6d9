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

#include "modelkit/network.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "modelkit/error.hpp"

namespace modelkit {

OperationNode::OperationNode(Operation op, MachinePtr machine, NodePtr arg)
    : Node({std::move(arg)}), op_(op), machine_(std::move(machine)) {
  if (!machine_ || !args_[0]) {
    fail(ErrorCode::InvalidArgument, "operation node needs a machine and an argument");
  }
}

std::string OperationNode::label() const {
  return std::string(to_string(op_)) + "(" + machine_->model().kind() + ")";
}

Data OperationNode::evaluate(const Data* Xnew) const {
  return machine_->apply(op_, args_[0]->evaluate(Xnew));
}

NodePtr OperationNode::clone(GraphCloner& cloner) const {
  auto copy = std::make_shared<OperationNode>(*this);
  copy->machine_ = cloner.machine(machine_);
  copy->args_[0] = cloner.node(args_[0]);
  return copy;
}

FunctionNode::FunctionNode(std::string label, NodeFunction f,
                           std::vector<NodePtr> args)
    : Node(std::move(args)), label_(std::move(label)), f_(std::move(f)) {
  if (!f_) fail(ErrorCode::InvalidArgument, "function node needs a function");
  for (const auto& a : args_) {
    if (!a) fail(ErrorCode::InvalidArgument, "function node argument is null");
  }
}

Data FunctionNode::evaluate(const Data* Xnew) const {
  std::vector<Data> values;
  values.reserve(args_.size());
  for (const auto& a : args_) values.push_back(a->evaluate(Xnew));
  return f_(values);
}

NodePtr FunctionNode::clone(GraphCloner& cloner) const {
  auto copy = std::make_shared<FunctionNode>(*this);
  for (auto& a : copy->args_) a = cloner.node(a);
  return copy;
}

NodePtr node(Operation op, MachinePtr machine, NodePtr arg) {
  return std::make_shared<OperationNode>(op, std::move(machine), std::move(arg));
}

NodePtr fn_node(std::string label, NodeFunction f, std::vector<NodePtr> args) {
  return std::make_shared<FunctionNode>(std::move(label), std::move(f),
                                        std::move(args));
}

std::vector<FitAction> TrainingLog::actions() const {
  std::vector<FitAction> out;
  for (const auto& e : entries) out.push_back(e.action);
  return out;
}

std::string TrainingLog::render() const {
  std::vector<std::uint64_t> ids;
  for (const auto& e : entries) ids.push_back(e.machine->id());
  std::sort(ids.begin(), ids.end());
  std::string out;
  for (const auto& e : entries) {
    const auto rank =
        std::lower_bound(ids.begin(), ids.end(), e.machine->id()) - ids.begin() + 1;
    out += "machine" + std::to_string(rank) + "(" + e.machine->model().kind() +
           ") => " + std::string(to_string(e.action)) + "\n";
  }
  return out;
}

namespace {

// Machines reachable from `roots`, following node arguments and the
// arguments of every machine met along the way.
std::vector<MachinePtr> machines_reachable(const std::vector<NodePtr>& roots) {
  std::vector<MachinePtr> out;
  std::unordered_set<const Node*> seen_nodes;
  std::unordered_set<const Machine*> seen_machines;
  std::vector<const Node*> stack;
  for (const auto& r : roots) stack.push_back(r.get());
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (!seen_nodes.insert(n).second) continue;
    for (const auto& a : n->args()) stack.push_back(a.get());
    if (const MachinePtr* m = n->machine()) {
      if (seen_machines.insert(m->get()).second) {
        out.push_back(*m);
        for (const auto& a : (*m)->args()) stack.push_back(a.get());
      }
    }
  }
  return out;
}

struct Plan {
  std::vector<MachinePtr> order;
  std::unordered_map<const Machine*, std::vector<MachinePtr>> upstream;
};

Plan plan(const std::vector<NodePtr>& terminals) {
  Plan p;
  std::vector<MachinePtr> machines = machines_reachable(terminals);
  std::unordered_map<const Machine*, std::size_t> indegree;
  std::unordered_map<const Machine*, std::vector<MachinePtr>> downstream;
  std::map<std::uint64_t, MachinePtr> by_id;
  for (const auto& m : machines) by_id.emplace(m->id(), m);
  for (const auto& m : machines) {
    std::vector<MachinePtr> up = machines_reachable(m->args());
    if (std::find(up.begin(), up.end(), m) != up.end()) {
      fail(ErrorCode::CycleDetected,
           "machine for " + m->model().kind() + " depends on its own output");
    }
    indegree[m.get()] = up.size();
    for (const auto& u : up) downstream[u.get()].push_back(m);
    p.upstream.emplace(m.get(), std::move(up));
  }
  // Kahn's algorithm; the ready set is ordered by creation id.
  std::set<std::uint64_t> ready;
  for (const auto& m : machines) {
    if (indegree[m.get()] == 0) ready.insert(m->id());
  }
  while (!ready.empty()) {
    const MachinePtr m = by_id.at(*ready.begin());
    ready.erase(ready.begin());
    p.order.push_back(m);
    for (const auto& d : downstream[m.get()]) {
      if (--indegree[d.get()] == 0) ready.insert(d->id());
    }
  }
  if (p.order.size() != machines.size()) {
    fail(ErrorCode::CycleDetected, "learning network contains a cycle");
  }
  return p;
}

}  // namespace

std::vector<MachinePtr> training_order(const std::vector<NodePtr>& terminals) {
  return plan(terminals).order;
}

TrainingLog fit_nodes(const std::vector<NodePtr>& terminals, bool force,
                      const std::optional<std::vector<std::size_t>>& rows) {
  Plan p = plan(terminals);
  TrainingLog log;
  std::unordered_set<const Machine*> acted;
  for (const auto& m : p.order) {
    bool upstream_changed = false;
    for (const auto& u : p.upstream.at(m.get())) {
      if (acted.count(u.get())) upstream_changed = true;
    }
    const FitAction action = m->fit(rows, force, upstream_changed);
    if (action != FitAction::Skipped) acted.insert(m.get());
    log.entries.push_back({m, action});
  }
  return log;
}

TrainingLog fit_node(const NodePtr& terminal, bool force,
                     const std::optional<std::vector<std::size_t>>& rows) {
  return fit_nodes({terminal}, force, rows);
}

}  // namespace modelkit
