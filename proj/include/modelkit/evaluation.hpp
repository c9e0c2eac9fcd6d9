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
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "modelkit/measures.hpp"
#include "modelkit/model.hpp"

namespace modelkit {

/// A single split: the last ceil(fraction·N) rows (after the optional
/// shuffle) form the test set.
struct Holdout {
  double fraction = 0.3;
  bool shuffle = false;
  std::uint64_t seed = 0;
};

/// Contiguous folds; the first N mod nfolds folds hold one extra row.
struct CV {
  std::size_t nfolds = 6;
  bool shuffle = false;
  std::uint64_t seed = 0;
};

using Resampling = std::variant<Holdout, CV>;

/// Throws InvalidArgument for a fraction outside (0, 1) or nfolds < 2.
void validate(const Resampling& resampling);
Resampling with_seed(Resampling resampling, std::uint64_t seed);
std::string describe(const Resampling& resampling);

struct TrainTestPair {
  std::vector<std::size_t> train;  // ascending unless shuffled
  std::vector<std::size_t> test;
};

std::vector<TrainTestPair> train_test_pairs(const Resampling& resampling,
                                            std::size_t nrows);

struct PerformanceEvaluation {
  std::vector<std::string> measures;
  std::vector<std::vector<double>> per_fold;  // [measure][fold]
  std::vector<double> measurement;            // unweighted mean over folds
  std::vector<TrainTestPair> pairs;
};

struct EvaluateOptions {
  /// Worker threads for folds; results do not depend on it.
  std::size_t threads = 1;
};

/// Fits a copy of `model` on each training set and scores its test-set
/// predictions. Probabilistic measures need a probabilistic model;
/// deterministic measures applied to a probabilistic model see its modes
/// (Finite targets) or means (otherwise).
PerformanceEvaluation evaluate(const Model& model, const Data& X, const Column& y,
                               const Resampling& resampling,
                               const std::vector<std::string>& measures,
                               const EvaluateOptions& options = {});
PerformanceEvaluation evaluate(const Model& model, const Data& X, const Column& y,
                               const Resampling& resampling,
                               std::span<const Measure> measures,
                               const EvaluateOptions& options = {});

/// Fixed-width table with columns measure, measurement and per_fold; values
/// at 3 significant digits.
std::string render_table(const PerformanceEvaluation& evaluation);

/// printf "%.3g", with negative zero printed as 0.
std::string format_3g(double value);

}  // namespace modelkit
