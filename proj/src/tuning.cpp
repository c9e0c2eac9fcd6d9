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

#include "modelkit/tuning.hpp"

#include <algorithm>
#include <cmath>

#include "internal/parallel.hpp"
#include "modelkit/error.hpp"

namespace modelkit {

std::string_view to_string(Scale scale) {
  return scale == Scale::Linear ? "linear" : "log";
}

std::string_view to_string(RangeKind kind) {
  return kind == RangeKind::Float ? "float" : "integer";
}

void validate(const NumericRange& r) {
  if (!(r.lower < r.upper)) {
    fail(ErrorCode::InvalidArgument,
         "range on '" + r.path + "' needs lower < upper");
  }
  if (r.scale == Scale::Log && !(r.lower > 0.0)) {
    fail(ErrorCode::InvalidArgument,
         "log-scale range on '" + r.path + "' needs a positive lower bound");
  }
  if (r.kind == RangeKind::Integer &&
      (std::floor(r.lower) != r.lower || std::floor(r.upper) != r.upper)) {
    fail(ErrorCode::InvalidArgument,
         "integer range on '" + r.path + "' needs integral bounds");
  }
}

NumericRange range(const Model& model, const std::string& path, double lower,
                   double upper, Scale scale) {
  const ParamValue& current = model.get(path);
  NumericRange r{path, lower, upper, scale,
                 current.kind() == ParamValue::Kind::Integer ? RangeKind::Integer
                                                             : RangeKind::Float};
  if (current.kind() != ParamValue::Kind::Integer &&
      current.kind() != ParamValue::Kind::Real) {
    fail(ErrorCode::TypeMismatch, "hyperparameter '" + path + "' is not numeric");
  }
  validate(r);
  return r;
}

namespace {

ParamValue as_value(const NumericRange& r, double x) {
  if (r.kind == RangeKind::Integer) {
    const double clamped = std::min(std::max(std::round(x), r.lower), r.upper);
    return static_cast<std::int64_t>(clamped);
  }
  return std::min(std::max(x, r.lower), r.upper);
}

}  // namespace

ParamValue sample_range(const NumericRange& r, Rng& rng) {
  validate(r);
  if (r.kind == RangeKind::Integer && r.scale == Scale::Linear) {
    return rng.integer(static_cast<std::int64_t>(r.lower),
                       static_cast<std::int64_t>(r.upper));
  }
  if (r.scale == Scale::Log) {
    return as_value(r, std::exp(rng.uniform(std::log(r.lower), std::log(r.upper))));
  }
  return as_value(r, rng.uniform(r.lower, r.upper));
}

std::vector<ParamValue> grid_points(const NumericRange& r, std::size_t resolution) {
  validate(r);
  if (resolution < 2) fail(ErrorCode::InvalidArgument, "grid resolution must be >= 2");
  std::vector<ParamValue> out;
  const bool log = r.scale == Scale::Log;
  // Base 10 keeps decade grids such as 0.01..100 exact.
  const double lo = log ? std::log10(r.lower) : r.lower;
  const double hi = log ? std::log10(r.upper) : r.upper;
  for (std::size_t k = 0; k < resolution; ++k) {
    double x;
    if (k == 0) {
      x = r.lower;
    } else if (k + 1 == resolution) {
      x = r.upper;
    } else {
      const double t = lo + (hi - lo) * static_cast<double>(k) /
                                static_cast<double>(resolution - 1);
      x = log ? std::pow(10.0, t) : t;
    }
    ParamValue v = as_value(r, x);
    if (r.kind == RangeKind::Integer && !out.empty() &&
        std::find(out.begin(), out.end(), v) != out.end()) {
      continue;
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::string TuningHistory::to_csv() const {
  std::string out = "index";
  for (const auto& p : paths) out += "," + p;
  out += ",measurement\n";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    out += std::to_string(i + 1);
    for (const auto& v : entries[i].values) out += "," + v.to_string();
    out += "," + render_number(entries[i].measurement) + "\n";
  }
  return out;
}

std::vector<Model> tuning_candidates(const Model& base, const TuningConfig& config,
                                     std::int64_t n, std::int64_t seed) {
  std::vector<Model> out;
  if (std::holds_alternative<RandomSearch>(config.strategy)) {
    if (n < 1) fail(ErrorCode::InvalidValue, "tuning budget n must be >= 1");
    for (std::int64_t i = 0; i < n; ++i) {
      Rng rng = Rng::derive(static_cast<std::uint64_t>(seed),
                            static_cast<std::uint64_t>(i));
      Model m = base;
      for (const auto& r : config.ranges) m.set(r.path, sample_range(r, rng));
      out.push_back(std::move(m));
    }
    return out;
  }
  const std::size_t resolution = std::get<Grid>(config.strategy).resolution;
  std::vector<std::vector<ParamValue>> axes;
  for (const auto& r : config.ranges) axes.push_back(grid_points(r, resolution));
  if (axes.empty()) fail(ErrorCode::EmptyGrid, "grid search needs at least one range");
  // Odometer order: the last range varies fastest.
  std::vector<std::size_t> pos(axes.size(), 0);
  while (true) {
    Model m = base;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      m.set(config.ranges[a].path, axes[a][pos[a]]);
    }
    out.push_back(std::move(m));
    std::size_t a = axes.size();
    while (a > 0 && ++pos[a - 1] == axes[a - 1].size()) pos[--a] = 0;
    if (a == 0) break;
  }
  return out;
}

namespace {

class TunedType final : public ModelType {
 public:
  TunedType(const Model& base, TuningConfig config)
      : config_(std::move(config)),
        kind_(base.type().prediction_kind()),
        inputs_(base.type().input_scitypes()),
        target_(base.type().target_scitype()),
        shape_(base.type().input_shape()) {
    validate(config_.resampling);
    const Measure& measure = find_measure(config_.measure);
    if (measure.info.prediction_kind == PredictionKind::Probabilistic &&
        kind_ != PredictionKind::Probabilistic) {
      fail(ErrorCode::MeasureModelMismatch,
           measure.info.name + " needs a probabilistic model, got " + base.kind());
    }
    if (!base.type().is_supervised()) {
      fail(ErrorCode::InvalidArgument, "only supervised models can be tuned");
    }
    if (config_.ranges.empty()) {
      fail(ErrorCode::InvalidArgument, "tuning needs at least one range");
    }
    for (const auto& r : config_.ranges) {
      validate(r);
      const ParamValue& current = base.get(r.path);
      if (r.kind == RangeKind::Float && current.kind() != ParamValue::Kind::Real) {
        fail(ErrorCode::TypeMismatch,
             "float range on '" + r.path + "' targets a non-real hyperparameter");
      }
      if (r.kind == RangeKind::Integer &&
          current.kind() != ParamValue::Kind::Integer &&
          current.kind() != ParamValue::Kind::Real) {
        fail(ErrorCode::TypeMismatch,
             "integer range on '" + r.path + "' targets a non-numeric hyperparameter");
      }
    }
    if (const auto* g = std::get_if<Grid>(&config_.strategy); g && g->resolution < 2) {
      fail(ErrorCode::InvalidArgument, "grid resolution must be >= 2");
    }
  }

  const std::string& name() const override {
    static const std::string name = "TunedModel";
    return name;
  }
  PredictionKind prediction_kind() const override { return kind_; }
  Params default_params() const override { return {}; }
  std::vector<Tag> input_scitypes() const override { return inputs_; }
  std::optional<Tag> target_scitype() const override { return target_; }
  InputShape input_shape() const override { return shape_; }
  bool checks_input() const override { return false; }

  FitOutput fit(const Model& model, const Data& X, const Column* y) const override {
    return search(model, X, y, nullptr);
  }

  FitOutput update(const Model& model, const FitOutput& previous, const Data& X,
                   const Column* y) const override {
    return search(model, X, y, state_if<TunedFit>(previous.fitresult));
  }

  Data predict(const Model&, const FitResult& fitresult,
               const Data& X) const override {
    const auto& fr = state_as<TunedFit>(fitresult, "tuned fit");
    return modelkit::apply(Operation::Predict, fr.best_model, fr.best.fitresult, X);
  }

 private:
  FitOutput search(const Model& model, const Data& X, const Column* y,
                   const TunedFit* previous) const {
    if (!y) fail(ErrorCode::ArityMismatch, "TunedModel requires a target");
    const Model& base = model.submodel("model");
    if (base.type().prediction_kind() != kind_) {
      fail(ErrorCode::InvalidValue, "TunedModel: base model changed prediction kind");
    }
    const std::int64_t seed = model.integer("seed");
    const std::vector<Model> candidates =
        tuning_candidates(base, config_, model.integer("n"), seed);
    const Measure& measure = find_measure(config_.measure);

    auto history = std::make_shared<TuningHistory>();
    for (const auto& r : config_.ranges) history->paths.push_back(r.path);
    history->measure = measure.info.name;
    history->orientation = measure.info.orientation;
    std::vector<PerformanceEvaluation> evals(candidates.size());
    detail::parallel_for(candidates.size(), config_.threads, [&](std::size_t i) {
      const Resampling rs = with_seed(
          config_.resampling, static_cast<std::uint64_t>(seed) + i);
      evals[i] = evaluate(candidates[i], X, *y, rs, std::vector<Measure>{measure});
    });
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      HistoryEntry e{candidates[i], {}, evals[i].per_fold[0], evals[i].measurement[0]};
      for (const auto& r : config_.ranges) e.values.push_back(candidates[i].get(r.path));
      history->entries.push_back(std::move(e));
      if (i > 0 && is_better(history->orientation, history->entries[i].measurement,
                             history->entries[history->best].measurement)) {
        history->best = i;
      }
    }

    const Model& winner = history->best_model();
    FitOutput best =
        previous && previous->best_model.type_ptr() == winner.type_ptr()
            ? modelkit::update(winner, previous->best, X, y)
            : modelkit::fit(winner, X, y);
    return {std::make_shared<TunedFit>(winner, std::move(best)), nullptr, history};
  }

  TuningConfig config_;
  PredictionKind kind_;
  std::vector<Tag> inputs_;
  std::optional<Tag> target_;
  InputShape shape_;
};

}  // namespace

Model tuned_model(const Model& base, TuningConfig config, std::int64_t n,
                  std::int64_t seed) {
  auto type = std::make_shared<const TunedType>(base, std::move(config));
  return Model(type, {{"model", base}, {"n", n}, {"seed", seed}});
}

const TuningHistory& tuning_history(const StatePtr& report) {
  return state_as<TuningHistory>(report, "tuning report");
}

const Model& best_model(const StatePtr& report) {
  return tuning_history(report).best_model();
}

}  // namespace modelkit
