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

#include "modelkit/model.hpp"

#include <cmath>

namespace modelkit {

namespace {

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    parts.push_back(path.substr(start, dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts;
}

[[noreturn]] void unknown_path(const Model& model, std::string_view path) {
  fail(ErrorCode::UnknownPath, "unknown hyperparameter path '" +
                                   std::string(path) + "' for " + model.kind());
}

void flatten_into(const Model& model, const std::string& prefix,
                  std::vector<std::pair<std::string, ParamValue>>& out) {
  for (const auto& [name, value] : model.params()) {
    const std::string path = prefix.empty() ? name : prefix + "." + name;
    if (value.is_model()) {
      flatten_into(value.as_model(), path, out);
    } else {
      out.emplace_back(path, value);
    }
  }
}

[[noreturn]] void unsupported(const ModelType& type, Operation op) {
  fail(ErrorCode::UnsupportedOperation,
       type.name() + " does not support " + std::string(to_string(op)));
}

}  // namespace

// ---------------------------------------------------------------------------
// ParamValue

ParamValue::ParamValue(const Model& model)
    : value_(std::make_unique<Model>(model)) {}
ParamValue::ParamValue(Model&& model)
    : value_(std::make_unique<Model>(std::move(model))) {}

ParamValue::ParamValue(const ParamValue& other) { *this = other; }

ParamValue& ParamValue::operator=(const ParamValue& other) {
  if (this == &other) return *this;
  if (auto* m = std::get_if<std::unique_ptr<Model>>(&other.value_)) {
    value_ = std::make_unique<Model>(**m);
  } else if (auto* d = std::get_if<double>(&other.value_)) {
    value_ = *d;
  } else if (auto* i = std::get_if<std::int64_t>(&other.value_)) {
    value_ = *i;
  } else {
    value_ = std::get<bool>(other.value_);
  }
  return *this;
}

ParamValue::~ParamValue() = default;

double ParamValue::as_real() const {
  if (auto* d = std::get_if<double>(&value_)) return *d;
  if (auto* i = std::get_if<std::int64_t>(&value_)) {
    return static_cast<double>(*i);
  }
  fail(ErrorCode::TypeMismatch,
       "expected a real hyperparameter, found " +
           std::string(modelkit::to_string(kind())));
}

std::int64_t ParamValue::as_integer() const {
  if (auto* i = std::get_if<std::int64_t>(&value_)) return *i;
  fail(ErrorCode::TypeMismatch,
       "expected an integer hyperparameter, found " +
           std::string(modelkit::to_string(kind())));
}

bool ParamValue::as_bool() const {
  if (auto* b = std::get_if<bool>(&value_)) return *b;
  fail(ErrorCode::TypeMismatch,
       "expected a boolean hyperparameter, found " +
           std::string(modelkit::to_string(kind())));
}

const Model& ParamValue::as_model() const {
  if (auto* m = std::get_if<std::unique_ptr<Model>>(&value_)) return **m;
  fail(ErrorCode::TypeMismatch,
       "expected a model hyperparameter, found " +
           std::string(modelkit::to_string(kind())));
}

Model& ParamValue::as_model() {
  if (auto* m = std::get_if<std::unique_ptr<Model>>(&value_)) return **m;
  fail(ErrorCode::TypeMismatch,
       "expected a model hyperparameter, found " +
           std::string(modelkit::to_string(kind())));
}

std::string ParamValue::to_string() const {
  switch (kind()) {
    case Kind::Real: return render_number(std::get<double>(value_));
    case Kind::Integer: return std::to_string(std::get<std::int64_t>(value_));
    case Kind::Boolean: return std::get<bool>(value_) ? "true" : "false";
    case Kind::Model: return as_model().to_string();
  }
  return "?";
}

bool operator==(const ParamValue& a, const ParamValue& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ParamValue::Kind::Real:
      return std::get<double>(a.value_) == std::get<double>(b.value_);
    case ParamValue::Kind::Integer:
      return std::get<std::int64_t>(a.value_) ==
             std::get<std::int64_t>(b.value_);
    case ParamValue::Kind::Boolean:
      return std::get<bool>(a.value_) == std::get<bool>(b.value_);
    case ParamValue::Kind::Model:
      return a.as_model() == b.as_model();
  }
  return false;
}

std::string_view to_string(ParamValue::Kind kind) {
  switch (kind) {
    case ParamValue::Kind::Real: return "real";
    case ParamValue::Kind::Integer: return "integer";
    case ParamValue::Kind::Boolean: return "boolean";
    case ParamValue::Kind::Model: return "model";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Model

Model::Model(std::shared_ptr<const ModelType> type, Params params)
    : type_(std::move(type)), params_(std::move(params)) {
  if (!type_) fail(ErrorCode::InvalidArgument, "model without a type");
}

const std::string& Model::kind() const { return type_->name(); }

ParamValue* Model::find(std::string_view name) {
  for (auto& [n, v] : params_) {
    if (n == name) return &v;
  }
  return nullptr;
}

const ParamValue* Model::find(std::string_view name) const {
  for (const auto& [n, v] : params_) {
    if (n == name) return &v;
  }
  return nullptr;
}

const ParamValue& Model::get(std::string_view path) const {
  const Model* current = this;
  const auto parts = split_path(path);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const ParamValue* v = current->find(parts[i]);
    if (!v) unknown_path(*this, path);
    if (i + 1 == parts.size()) return *v;
    if (!v->is_model()) unknown_path(*this, path);
    current = &v->as_model();
  }
  unknown_path(*this, path);
}

bool Model::has(std::string_view path) const {
  try {
    get(path);
    return true;
  } catch (const Error&) {
    return false;
  }
}

void Model::set(std::string_view path, ParamValue value) {
  Model* current = this;
  const auto parts = split_path(path);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    ParamValue* slot = current->find(parts[i]);
    if (!slot) unknown_path(*this, path);
    if (i + 1 < parts.size()) {
      if (!slot->is_model()) unknown_path(*this, path);
      current = &slot->as_model();
      continue;
    }
    const auto have = slot->kind();
    const auto give = value.kind();
    if (have == give) {
      *slot = std::move(value);
    } else if (have == ParamValue::Kind::Real &&
               give == ParamValue::Kind::Integer) {
      *slot = ParamValue(value.as_real());
    } else {
      fail(ErrorCode::TypeMismatch,
           "cannot assign " + std::string(modelkit::to_string(give)) + " to " +
               std::string(modelkit::to_string(have)) + " hyperparameter '" +
               std::string(path) + "'");
    }
  }
}

std::vector<std::pair<std::string, ParamValue>> Model::flatten() const {
  std::vector<std::pair<std::string, ParamValue>> out;
  flatten_into(*this, "", out);
  return out;
}

std::string Model::to_string() const {
  std::string out = kind() + "(";
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (i > 0) out += ", ";
    out += params_[i].first + "=" + params_[i].second.to_string();
  }
  return out + ")";
}

bool operator==(const Model& a, const Model& b) {
  return a.type_ == b.type_ && a.params_ == b.params_;
}

ParamValue get_param(const Model& model, std::string_view path) {
  return model.get(path);
}

Model set_param(const Model& model, std::string_view path, ParamValue value) {
  Model copy = model;
  copy.set(path, std::move(value));
  return copy;
}

std::vector<std::pair<std::string, ParamValue>> params_list(
    const Model& model) {
  return model.flatten();
}

// ---------------------------------------------------------------------------
// Protocol

std::string_view to_string(Operation op) {
  switch (op) {
    case Operation::Predict: return "predict";
    case Operation::PredictMean: return "predict_mean";
    case Operation::PredictMedian: return "predict_median";
    case Operation::PredictMode: return "predict_mode";
    case Operation::Transform: return "transform";
    case Operation::InverseTransform: return "inverse_transform";
  }
  return "?";
}

std::optional<Operation> parse_operation(std::string_view name) {
  for (Operation op :
       {Operation::Predict, Operation::PredictMean, Operation::PredictMedian,
        Operation::PredictMode, Operation::Transform,
        Operation::InverseTransform}) {
    if (to_string(op) == name) return op;
  }
  return std::nullopt;
}

FitOutput ModelType::update(const Model& model, const FitOutput&,
                            const Data& X, const Column* y) const {
  return fit(model, X, y);
}

bool ModelType::supports(Operation op) const {
  switch (op) {
    case Operation::Predict:
      return prediction_kind() != PredictionKind::Transformer;
    case Operation::PredictMean:
    case Operation::PredictMedian:
    case Operation::PredictMode:
      return prediction_kind() == PredictionKind::Probabilistic;
    case Operation::Transform:
      return prediction_kind() == PredictionKind::Transformer;
    case Operation::InverseTransform:
      return false;
  }
  return false;
}

Data ModelType::predict(const Model&, const FitResult&, const Data&) const {
  unsupported(*this, Operation::Predict);
}

Data ModelType::transform(const Model&, const FitResult&, const Data&) const {
  unsupported(*this, Operation::Transform);
}

Data ModelType::inverse_transform(const Model&, const FitResult&,
                                  const Data&) const {
  unsupported(*this, Operation::InverseTransform);
}

Model ModelType::make() const {
  return Model(shared_from_this(), default_params());
}

Model make_model(std::shared_ptr<const ModelType> type) {
  auto params = type->default_params();
  return Model(std::move(type), std::move(params));
}

void check_fit_data(const Model& model, const Data& X, const Column* y) {
  const ModelType& type = model.type();
  const auto accepted = type.input_scitypes();
  auto check_column = [&](const Column& c, const std::string& name) {
    const SciType st = scitype_of(c);
    if (st.nullable) {
      fail(ErrorCode::ScitypeMismatch, type.name() + ": column '" + name +
                                           "' has missing values");
    }
    for (Tag t : accepted) {
      if (subsumes(t, st.tag)) return;
    }
    fail(ErrorCode::ScitypeMismatch,
         type.name() + ": column '" + name + "' has scitype " +
             std::string(to_string(st.tag)) + ", which the model does not accept");
  };

  std::size_t n = 0;
  if (type.input_shape() == InputShape::Table) {
    if (!std::holds_alternative<Table>(X)) {
      fail(ErrorCode::ScitypeMismatch,
           type.name() + " expects a table of features, got " + kind_name(X));
    }
    const Table& t = std::get<Table>(X);
    for (std::size_t j = 0; j < t.ncols(); ++j) {
      check_column(t.column(j), t.names()[j]);
    }
    n = t.nrows();
  } else {
    if (!std::holds_alternative<Column>(X)) {
      fail(ErrorCode::ScitypeMismatch,
           type.name() + " expects a single column, got " + kind_name(X));
    }
    check_column(std::get<Column>(X), "input");
    n = std::get<Column>(X).size();
  }

  if (!type.is_supervised()) {
    if (y) {
      fail(ErrorCode::ArityMismatch,
           type.name() + " is unsupervised and takes no target");
    }
    return;
  }
  if (!y) {
    fail(ErrorCode::ArityMismatch, type.name() + " requires a target");
  }
  const SciType yt = scitype_of(*y);
  if (yt.nullable) {
    fail(ErrorCode::ScitypeMismatch,
         type.name() + ": target has missing values");
  }
  if (auto want = type.target_scitype(); want && !subsumes(*want, yt.tag)) {
    fail(ErrorCode::ScitypeMismatch,
         type.name() + ": target scitype " + std::string(to_string(yt.tag)) +
             " is not " + std::string(to_string(*want)));
  }
  if (y->size() != n) {
    fail(ErrorCode::LengthMismatch,
         type.name() + ": " + std::to_string(n) + " feature rows but " +
             std::to_string(y->size()) + " target values");
  }
}

FitOutput fit(const Model& model, const Data& X, const Column* y) {
  if (model.type().checks_input()) check_fit_data(model, X, y);
  return model.type().fit(model, X, y);
}

FitOutput fit(const Model& model, const Data& X, const Column& y) {
  return fit(model, X, &y);
}

FitOutput update(const Model& model, const FitOutput& previous, const Data& X,
                 const Column* y) {
  if (model.type().checks_input()) check_fit_data(model, X, y);
  return model.type().update(model, previous, X, y);
}

Data mean_of(const Data& distributions) {
  if (auto* normals = std::get_if<NormalDistributions>(&distributions)) {
    std::vector<double> out;
    out.reserve(normals->size());
    for (const auto& d : *normals) out.push_back(d.mean());
    return Column::floats(std::move(out));
  }
  if (std::holds_alternative<FiniteDistributions>(distributions)) {
    fail(ErrorCode::UndefinedStatistic,
         "mean is undefined for distributions over class labels");
  }
  fail(ErrorCode::UnsupportedOperation,
       "mean requires distribution-valued predictions");
}

Data median_of(const Data& distributions) {
  if (auto* normals = std::get_if<NormalDistributions>(&distributions)) {
    std::vector<double> out;
    out.reserve(normals->size());
    for (const auto& d : *normals) out.push_back(d.median());
    return Column::floats(std::move(out));
  }
  if (std::holds_alternative<FiniteDistributions>(distributions)) {
    fail(ErrorCode::UndefinedStatistic,
         "median is undefined for distributions over class labels");
  }
  fail(ErrorCode::UnsupportedOperation,
       "median requires distribution-valued predictions");
}

Data mode_of(const Data& distributions) {
  if (auto* normals = std::get_if<NormalDistributions>(&distributions)) {
    std::vector<double> out;
    out.reserve(normals->size());
    for (const auto& d : *normals) out.push_back(d.mode());
    return Column::floats(std::move(out));
  }
  if (auto* finite = std::get_if<FiniteDistributions>(&distributions)) {
    if (finite->empty()) return Column::categorical({}, make_pool({}));
    std::vector<std::uint32_t> codes;
    codes.reserve(finite->size());
    for (const auto& d : *finite) {
      codes.push_back(static_cast<std::uint32_t>(d.mode_index()));
    }
    const auto& first = finite->front();
    return Column::categorical(std::move(codes), first.pool(), first.ordered());
  }
  fail(ErrorCode::UnsupportedOperation,
       "mode requires distribution-valued predictions");
}

Data apply(Operation op, const Model& model, const FitResult& fitresult,
           const Data& X) {
  const ModelType& type = model.type();
  if (!type.supports(op)) unsupported(type, op);
  switch (op) {
    case Operation::Predict: return type.predict(model, fitresult, X);
    case Operation::PredictMean:
      return mean_of(type.predict(model, fitresult, X));
    case Operation::PredictMedian:
      return median_of(type.predict(model, fitresult, X));
    case Operation::PredictMode:
      return mode_of(type.predict(model, fitresult, X));
    case Operation::Transform: return type.transform(model, fitresult, X);
    case Operation::InverseTransform:
      return type.inverse_transform(model, fitresult, X);
  }
  unsupported(type, op);
}

Data predict(const Model& model, const FitResult& fitresult, const Data& X) {
  return apply(Operation::Predict, model, fitresult, X);
}
Data transform(const Model& model, const FitResult& fitresult, const Data& X) {
  return apply(Operation::Transform, model, fitresult, X);
}
Data inverse_transform(const Model& model, const FitResult& fitresult,
                       const Data& X) {
  return apply(Operation::InverseTransform, model, fitresult, X);
}
Data predict_mean(const Model& model, const FitResult& fitresult,
                  const Data& X) {
  return apply(Operation::PredictMean, model, fitresult, X);
}
Data predict_median(const Model& model, const FitResult& fitresult,
                    const Data& X) {
  return apply(Operation::PredictMedian, model, fitresult, X);
}
Data predict_mode(const Model& model, const FitResult& fitresult,
                  const Data& X) {
  return apply(Operation::PredictMode, model, fitresult, X);
}

}  // namespace modelkit
