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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "modelkit/data.hpp"
#include "modelkit/distributions.hpp"
#include "modelkit/scitype.hpp"

namespace modelkit {

enum class Orientation { Loss, Score };

std::string_view to_string(Orientation orientation);

struct MeasureInfo {
  std::string name;
  Orientation orientation = Orientation::Loss;
  /// Probabilistic measures receive distributions in the prediction slot.
  PredictionKind prediction_kind = PredictionKind::Deterministic;
  /// Abstract tag the target's scitype must fall under.
  Tag target_scitype = Tag::Known;
};

/// A measure turns one fold's predictions and ground truth into a single
/// number. For the per-observation measures this is the mean of the
/// per-observation values; rms is the root of the mean.
struct Measure {
  MeasureInfo info;
  std::function<double(const Data& predictions, const Column& truth)> apply;
};

const std::vector<Measure>& builtin_measures();
/// Throws UnknownMeasure with message "unknown measure: <name>".
const Measure& find_measure(std::string_view name);

/// True when `candidate` beats `incumbent` strictly under `orientation`.
bool is_better(Orientation orientation, double candidate, double incumbent);

double l2(double prediction, double truth);
double rms(std::span<const double> predictions, std::span<const double> truth);

/// −Σ_k (p_k − [k = truth])²; 0 for a perfect point mass.
double brier_score(const UnivariateFinite& d, std::string_view truth);
/// −ln(max(pdf(truth), 1e-15)).
double cross_entropy(const UnivariateFinite& d, std::string_view truth);
/// Squared hinge on the margin (2p − 1)·s, with p the probability of the
/// positive (second) pool class and s = ±1 for positive/negative truth.
double l2_hinge(const UnivariateFinite& d, std::string_view truth);
double misclassification_rate(std::span<const std::string> predictions,
                              std::span<const std::string> truth);

inline constexpr double kCrossEntropyClamp = 1e-15;

}  // namespace modelkit
