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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "modelkit/data.hpp"
#include "modelkit/error.hpp"
#include "modelkit/scitype.hpp"

namespace modelkit {

class Model;
class ModelType;

/// One hyperparameter value: a real, an integer (including seeds), a
/// boolean, or a nested model. Copies are deep.
class ParamValue {
 public:
  enum class Kind { Real, Integer, Boolean, Model };

  ParamValue(double value) : value_(value) {}
  ParamValue(std::int64_t value) : value_(value) {}
  ParamValue(int value) : value_(static_cast<std::int64_t>(value)) {}
  ParamValue(bool value) : value_(value) {}
  ParamValue(const char*) = delete;
  ParamValue(const Model& model);
  ParamValue(Model&& model);

  ParamValue(const ParamValue& other);
  ParamValue(ParamValue&&) noexcept = default;
  ParamValue& operator=(const ParamValue& other);
  ParamValue& operator=(ParamValue&&) noexcept = default;
  ~ParamValue();

  Kind kind() const { return static_cast<Kind>(value_.index()); }
  bool is_model() const { return kind() == Kind::Model; }

  double as_real() const;  // integers widen
  std::int64_t as_integer() const;
  bool as_bool() const;
  const Model& as_model() const;
  Model& as_model();

  /// Full-precision text form; nested models render recursively.
  std::string to_string() const;

  friend bool operator==(const ParamValue& a, const ParamValue& b);

 private:
  std::variant<double, std::int64_t, bool, std::unique_ptr<Model>> value_;
};

std::string_view to_string(ParamValue::Kind kind);

using Params = std::vector<std::pair<std::string, ParamValue>>;

/// A named record of hyperparameters. Models never hold learned state;
/// behaviour lives in the shared, immutable ModelType.
class Model {
 public:
  Model(std::shared_ptr<const ModelType> type, Params params);

  const ModelType& type() const { return *type_; }
  const std::shared_ptr<const ModelType>& type_ptr() const { return type_; }
  const std::string& kind() const;

  const Params& params() const { return params_; }

  /// Dotted-path lookup through nested models, e.g. "atom.max_depth".
  const ParamValue& get(std::string_view path) const;
  /// In-place, type-checked assignment. Integers may be stored into real
  /// slots; nothing else converts.
  void set(std::string_view path, ParamValue value);
  bool has(std::string_view path) const;

  double real(std::string_view path) const { return get(path).as_real(); }
  std::int64_t integer(std::string_view path) const {
    return get(path).as_integer();
  }
  bool boolean(std::string_view path) const { return get(path).as_bool(); }
  const Model& submodel(std::string_view path) const {
    return get(path).as_model();
  }

  /// Leaf hyperparameters, depth-first in declaration order.
  std::vector<std::pair<std::string, ParamValue>> flatten() const;

  /// e.g. `RidgeRegressor(lambda=1)`.
  std::string to_string() const;

  /// Same kind and recursively equal hyperparameters.
  friend bool operator==(const Model& a, const Model& b);

 private:
  ParamValue* find(std::string_view name);
  const ParamValue* find(std::string_view name) const;

  std::shared_ptr<const ModelType> type_;
  Params params_;
};

ParamValue get_param(const Model& model, std::string_view path);
/// Returns a modified copy; `model` is untouched.
Model set_param(const Model& model, std::string_view path, ParamValue value);
std::vector<std::pair<std::string, ParamValue>> params_list(const Model& model);

// ---------------------------------------------------------------------------
// Learned state

/// Base for every opaque per-model artifact (fit results, caches, reports).
struct State {
  virtual ~State() = default;
};

using StatePtr = std::shared_ptr<const State>;
using FitResult = StatePtr;

struct FitOutput {
  FitResult fitresult;
  StatePtr cache;   // private warm-restart carrier; never needed to predict
  StatePtr report;  // user-facing diagnostics
};

template <class T>
const T& state_as(const StatePtr& state, std::string_view what = "state") {
  const T* p = dynamic_cast<const T*>(state.get());
  if (!p) {
    fail(ErrorCode::TypeMismatch,
         std::string(what) + " was produced by a different model kind");
  }
  return *p;
}

template <class T>
const T* state_if(const StatePtr& state) {
  return dynamic_cast<const T*>(state.get());
}

// ---------------------------------------------------------------------------
// Model protocol

enum class Operation {
  Predict,
  PredictMean,
  PredictMedian,
  PredictMode,
  Transform,
  InverseTransform,
};

std::string_view to_string(Operation op);
std::optional<Operation> parse_operation(std::string_view name);

/// Shape of the primary (feature) argument a model trains on.
enum class InputShape { Table, Column };

/// Behaviour of one model kind. Implementations are stateless and shared.
class ModelType : public std::enable_shared_from_this<ModelType> {
 public:
  virtual ~ModelType() = default;

  virtual const std::string& name() const = 0;
  virtual PredictionKind prediction_kind() const = 0;
  bool is_supervised() const {
    return prediction_kind() != PredictionKind::Transformer;
  }
  virtual Params default_params() const = 0;

  /// Acceptable feature scitypes; a column qualifies when one of them
  /// subsumes its scitype.
  virtual std::vector<Tag> input_scitypes() const = 0;
  virtual std::optional<Tag> target_scitype() const { return std::nullopt; }
  virtual InputShape input_shape() const { return InputShape::Table; }

  virtual FitOutput fit(const Model& model, const Data& X,
                        const Column* y) const = 0;
  /// Warm restart. The caller guarantees the data equals that of the call
  /// that produced `previous`. The default simply refits.
  virtual FitOutput update(const Model& model, const FitOutput& previous,
                           const Data& X, const Column* y) const;

  virtual bool supports(Operation op) const;
  virtual Data predict(const Model& model, const FitResult& fitresult,
                       const Data& X) const;
  virtual Data transform(const Model& model, const FitResult& fitresult,
                         const Data& X) const;
  virtual Data inverse_transform(const Model& model, const FitResult& fitresult,
                                 const Data& X) const;
  /// Whether the framework should validate scitypes before fit. Wrappers
  /// whose components validate for themselves return false.
  virtual bool checks_input() const { return true; }

  Model make() const;
};

Model make_model(std::shared_ptr<const ModelType> type);

/// Validates the feature (and target) scitypes against the model's
/// declaration; throws ScitypeMismatch naming the offending column.
void check_fit_data(const Model& model, const Data& X, const Column* y);

FitOutput fit(const Model& model, const Data& X, const Column* y = nullptr);
FitOutput fit(const Model& model, const Data& X, const Column& y);
FitOutput update(const Model& model, const FitOutput& previous, const Data& X,
                 const Column* y = nullptr);

Data apply(Operation op, const Model& model, const FitResult& fitresult,
           const Data& X);
Data predict(const Model& model, const FitResult& fitresult, const Data& X);
Data transform(const Model& model, const FitResult& fitresult, const Data& X);
Data inverse_transform(const Model& model, const FitResult& fitresult,
                       const Data& X);
Data predict_mean(const Model& model, const FitResult& fitresult, const Data& X);
Data predict_median(const Model& model, const FitResult& fitresult,
                    const Data& X);
Data predict_mode(const Model& model, const FitResult& fitresult, const Data& X);

/// Elementwise statistics over distribution-valued predictions.
Data mean_of(const Data& distributions);
Data median_of(const Data& distributions);
Data mode_of(const Data& distributions);

}  // namespace modelkit
