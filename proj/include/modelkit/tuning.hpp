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
#include <string>
#include <variant>
#include <vector>

#include "modelkit/evaluation.hpp"
#include "modelkit/model.hpp"
#include "modelkit/rng.hpp"

namespace modelkit {

enum class Scale { Linear, Log };
enum class RangeKind { Float, Integer };

std::string_view to_string(Scale scale);
std::string_view to_string(RangeKind kind);

/// Bounded search domain for one hyperparameter, addressed by dotted path.
struct NumericRange {
  std::string path;
  double lower = 0.0;
  double upper = 1.0;
  Scale scale = Scale::Linear;
  RangeKind kind = RangeKind::Float;
};

/// Throws InvalidArgument unless lower < upper (and lower > 0 on a log
/// scale); integer ranges need integral bounds.
void validate(const NumericRange& range);
/// Range whose kind follows the current value at `path` in `model`.
NumericRange range(const Model& model, const std::string& path, double lower,
                   double upper, Scale scale = Scale::Linear);

/// Uniform on the range's scale. Integer ranges on a linear scale draw
/// uniformly from {lower, ..., upper}; on a log scale the draw is rounded.
ParamValue sample_range(const NumericRange& range, Rng& rng);
/// `resolution` evenly spaced points on the scale, endpoints included.
/// Integer ranges are rounded, then deduplicated in order.
std::vector<ParamValue> grid_points(const NumericRange& range,
                                    std::size_t resolution);

struct RandomSearch {};
struct Grid {
  std::size_t resolution = 10;
};
using TuningStrategy = std::variant<RandomSearch, Grid>;

struct TuningConfig {
  TuningStrategy strategy = RandomSearch{};
  Resampling resampling = CV{};
  std::vector<NumericRange> ranges;
  std::string measure = "l2";
  /// Worker threads for candidates; results do not depend on it.
  std::size_t threads = 1;
};

struct HistoryEntry {
  Model model;
  std::vector<ParamValue> values;  // one per range, in range order
  std::vector<double> per_fold;
  double measurement = 0.0;
};

/// Report of a tuned fit: every candidate in evaluation order.
struct TuningHistory : State {
  std::vector<std::string> paths;
  std::string measure;
  Orientation orientation = Orientation::Loss;
  std::vector<HistoryEntry> entries;
  std::size_t best = 0;

  const Model& best_model() const { return entries.at(best).model; }
  /// `index,<path>...,measurement` with a 1-based index and values in
  /// shortest round-trip form.
  std::string to_csv() const;
};

struct TunedFit : State {
  TunedFit(Model m, FitOutput b) : best_model(std::move(m)), best(std::move(b)) {}
  Model best_model;
  FitOutput best;
};

/// Wraps `base` so that fitting searches the ranges and refits the winner
/// on all data. Hyperparameters: "model" (the base), "n" (RandomSearch
/// budget; Grid ignores it) and "seed".
Model tuned_model(const Model& base, TuningConfig config, std::int64_t n = 10,
                  std::int64_t seed = 0);

/// History of the last search stored in a tuned machine's report.
const TuningHistory& tuning_history(const StatePtr& report);
const Model& best_model(const StatePtr& report);

/// Candidate models a tuned fit would evaluate, in evaluation order.
std::vector<Model> tuning_candidates(const Model& base,
                                     const TuningConfig& config, std::int64_t n,
                                     std::int64_t seed);

}  // namespace modelkit
