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

#include "modelkit/composite.hpp"

#include <algorithm>
#include <unordered_set>

#include "modelkit/error.hpp"

namespace modelkit {

Blueprint::Blueprint(std::string name, PredictionKind kind)
    : name_(std::move(name)), kind_(kind) {}

const SourcePtr& Blueprint::input() {
  if (!input_) input_ = source({}, SourceRole::Input);
  return input_;
}

const SourcePtr& Blueprint::target() {
  if (!target_) target_ = source({}, SourceRole::Target);
  return target_;
}

MachinePtr Blueprint::machine(const std::string& slot, const Model& default_model,
                              std::vector<NodePtr> args) {
  auto it = std::find_if(slots_.begin(), slots_.end(),
                         [&](const auto& s) { return s.first == slot; });
  if (it == slots_.end()) {
    slots_.emplace_back(slot, default_model);
  } else if (!(it->second.as_model() == default_model)) {
    fail(ErrorCode::InvalidBlueprint,
         "slot '" + slot + "' already has a different default model");
  }
  return machine(slot, std::move(args));
}

MachinePtr Blueprint::machine(const std::string& slot, std::vector<NodePtr> args) {
  auto it = std::find_if(slots_.begin(), slots_.end(),
                         [&](const auto& s) { return s.first == slot; });
  if (it == slots_.end()) {
    fail(ErrorCode::InvalidBlueprint, "unknown slot '" + slot + "'");
  }
  MachinePtr m = modelkit::machine(std::make_shared<Model>(it->second.as_model()),
                                   std::move(args));
  machine_slots_.emplace_back(m, slot);
  return m;
}

void Blueprint::terminal(Operation op, NodePtr n) {
  if (!n) fail(ErrorCode::InvalidBlueprint, "terminal node is null");
  for (const auto& t : terminals_) {
    if (t.first == op) {
      fail(ErrorCode::InvalidBlueprint,
           "duplicate terminal for " + std::string(to_string(op)));
    }
  }
  terminals_.emplace_back(op, std::move(n));
}

void Blueprint::validate() const {
  if (terminals_.empty()) {
    fail(ErrorCode::InvalidBlueprint, name_ + ": blueprint has no terminals");
  }
  if (!input_) fail(ErrorCode::InvalidBlueprint, name_ + ": no input source");
  const bool has_predict =
      std::any_of(terminals_.begin(), terminals_.end(),
                  [](const auto& t) { return t.first == Operation::Predict; });
  if ((kind_ != PredictionKind::Transformer) != has_predict) {
    fail(ErrorCode::InvalidBlueprint,
         name_ + ": a predict terminal is required exactly when the "
                 "composite is a predictor");
  }
  if (kind_ != PredictionKind::Transformer && !target_) {
    fail(ErrorCode::InvalidBlueprint, name_ + ": predictor needs a target source");
  }
  std::vector<NodePtr> nodes;
  for (const auto& t : terminals_) nodes.push_back(t.second);
  for (const auto& m : training_order(nodes)) {
    const bool slotted =
        std::any_of(machine_slots_.begin(), machine_slots_.end(),
                    [&](const auto& ms) { return ms.first == m; });
    if (!slotted) {
      fail(ErrorCode::InvalidBlueprint,
           name_ + ": machine for " + m->model().kind() +
               " is not attached to a slot");
    }
  }
}

NodePtr NetworkInstance::terminal(Operation op) const {
  for (const auto& t : terminals) {
    if (t.first == op) return t.second;
  }
  return nullptr;
}

std::vector<NodePtr> NetworkInstance::terminal_nodes() const {
  std::vector<NodePtr> out;
  for (const auto& t : terminals) out.push_back(t.second);
  return out;
}

NetworkInstance NetworkInstance::clone() const {
  GraphCloner cloner;
  NetworkInstance out;
  out.input = std::static_pointer_cast<Source>(cloner.node(input));
  if (target) out.target = std::static_pointer_cast<Source>(cloner.node(target));
  for (const auto& [m, slot] : machine_slots) {
    out.machine_slots.emplace_back(cloner.machine(m), slot);
  }
  for (const auto& [op, n] : terminals) out.terminals.emplace_back(op, cloner.node(n));
  return out;
}

class CompositeType final : public ModelType {
 public:
  explicit CompositeType(const Blueprint& bp)
      : name_(bp.name_),
        kind_(bp.kind_),
        slots_(bp.slots_),
        inputs_(bp.inputs_),
        target_tag_(bp.target_tag_) {
    prototype_.input = bp.input_;
    prototype_.target = bp.target_;
    prototype_.machine_slots = bp.machine_slots_;
    prototype_.terminals = bp.terminals_;
    // Detach from the builder so later edits to it have no effect.
    prototype_ = prototype_.clone();
  }

  const std::string& name() const override { return name_; }
  PredictionKind prediction_kind() const override { return kind_; }
  Params default_params() const override { return slots_; }
  std::vector<Tag> input_scitypes() const override { return inputs_; }
  std::optional<Tag> target_scitype() const override { return target_tag_; }
  bool checks_input() const override { return false; }

  bool supports(Operation op) const override {
    switch (op) {
      case Operation::PredictMean:
      case Operation::PredictMedian:
      case Operation::PredictMode:
        return kind_ == PredictionKind::Probabilistic &&
               prototype_.terminal(Operation::Predict) != nullptr;
      default:
        return prototype_.terminal(op) != nullptr;
    }
  }

  FitOutput fit(const Model& model, const Data& X,
                const Column* y) const override {
    NetworkInstance net = prototype_.clone();
    net.input->rebind(X);
    if (net.target) {
      if (!y) fail(ErrorCode::ArityMismatch, name_ + " requires a target");
      net.target->rebind(*y);
    }
    return train(model, std::move(net));
  }

  FitOutput update(const Model& model, const FitOutput& previous, const Data& X,
                   const Column* y) const override {
    const auto* old = state_if<CompositeFit>(previous.fitresult);
    if (!old) return fit(model, X, y);
    return train(model, old->network.clone());
  }

  Data predict(const Model&, const FitResult& fr, const Data& X) const override {
    return call_terminal(fr, Operation::Predict, X);
  }
  Data transform(const Model&, const FitResult& fr, const Data& X) const override {
    return call_terminal(fr, Operation::Transform, X);
  }
  Data inverse_transform(const Model&, const FitResult& fr,
                         const Data& X) const override {
    return call_terminal(fr, Operation::InverseTransform, X);
  }

 private:
  FitOutput train(const Model& model, NetworkInstance net) const {
    for (auto& [m, slot] : net.machine_slots) m->model() = model.submodel(slot);
    auto report = std::make_shared<CompositeReport>();
    report->log = fit_nodes(net.terminal_nodes());
    auto fr = std::make_shared<CompositeFit>();
    fr->network = std::move(net);
    return {fr, nullptr, report};
  }

  Data call_terminal(const FitResult& fitresult, Operation op,
                     const Data& X) const {
    const auto& fr = state_as<CompositeFit>(fitresult, "composite fit");
    NodePtr n = fr.network.terminal(op);
    if (!n) {
      fail(ErrorCode::UnsupportedOperation,
           name_ + " does not support " + std::string(to_string(op)));
    }
    return n->call(X);
  }

  std::string name_;
  PredictionKind kind_;
  Params slots_;
  std::vector<Tag> inputs_;
  std::optional<Tag> target_tag_;
  NetworkInstance prototype_;
};

std::shared_ptr<const ModelType> export_blueprint(const Blueprint& blueprint) {
  blueprint.validate();
  return std::make_shared<const CompositeType>(blueprint);
}

Model export_model(const Blueprint& blueprint) {
  return export_blueprint(blueprint)->make();
}

Blueprint linear_pipeline(const std::string& name,
                          const std::vector<std::pair<std::string, Model>>& steps) {
  if (steps.empty()) fail(ErrorCode::InvalidBlueprint, name + ": no steps");
  const Model& last = steps.back().second;
  Blueprint bp(name, last.type().prediction_kind());
  NodePtr current = bp.input();
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& [slot, model] = steps[i];
    const bool final_step = i + 1 == steps.size();
    if (model.type().is_supervised()) {
      if (!final_step) {
        fail(ErrorCode::InvalidBlueprint,
             name + ": only the final step may be a predictor");
      }
      MachinePtr m = bp.machine(slot, model, {current, bp.target()});
      bp.terminal(Operation::Predict, node(Operation::Predict, m, current));
      bp.set_target_scitype(model.type().target_scitype());
    } else {
      MachinePtr m = bp.machine(slot, model, {current});
      current = node(Operation::Transform, m, current);
      if (final_step) bp.terminal(Operation::Transform, current);
    }
  }
  bp.set_input_scitypes(steps.front().second.type().input_scitypes());
  return bp;
}

Blueprint target_transformed_regressor(const std::string& name,
                                       const Model& regressor,
                                       const Model& target_transformer) {
  Blueprint bp(name, PredictionKind::Deterministic);
  const SourcePtr& X = bp.input();
  const SourcePtr& y = bp.target();
  MachinePtr t = bp.machine("target_transformer", target_transformer, {y});
  NodePtr z = node(Operation::Transform, t, y);
  MachinePtr r = bp.machine("regressor", regressor, {X, z});
  NodePtr zhat = node(regressor.type().prediction_kind() ==
                              PredictionKind::Probabilistic
                          ? Operation::PredictMean
                          : Operation::Predict,
                      r, X);
  bp.terminal(Operation::Predict, node(Operation::InverseTransform, t, zhat));
  bp.set_input_scitypes(regressor.type().input_scitypes());
  bp.set_target_scitype(Tag::Continuous);
  return bp;
}

}  // namespace modelkit
