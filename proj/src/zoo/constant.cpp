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

#include <cmath>

#include "modelkit/zoo.hpp"
#include "zoo_internal.hpp"

namespace modelkit::zoo_detail {

namespace {

class ConstantClassifierType final : public ZooType {
 public:
  ConstantClassifierType()
      : ZooType("ConstantClassifier", PredictionKind::Probabilistic,
                {Tag::Infinite, Tag::Finite}, Tag::Finite) {}

  Params default_params() const override { return {}; }

  FitOutput fit(const Model&, const Data&, const Column* y) const override {
    return {std::make_shared<ConstantClassifierFit>(
                frequency_distribution(finite_target(*y))),
            nullptr, nullptr};
  }

  Data predict(const Model&, const FitResult& fitresult,
               const Data& X) const override {
    const auto& fr =
        state_as<ConstantClassifierFit>(fitresult, "ConstantClassifier fit");
    return FiniteDistributions(nrows(X), fr.distribution);
  }
};

class ConstantRegressorType final : public ZooType {
 public:
  ConstantRegressorType()
      : ZooType("ConstantRegressor", PredictionKind::Probabilistic,
                {Tag::Infinite, Tag::Finite}, Tag::Continuous) {}

  Params default_params() const override { return {}; }

  FitOutput fit(const Model&, const Data&, const Column* y) const override {
    const std::vector<double> v = y->as_doubles();
    if (v.empty()) {
      fail(ErrorCode::DegenerateData, "ConstantRegressor: empty target");
    }
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(v.size()));
    return {std::make_shared<ConstantRegressorFit>(NormalDist(mean, sd)),
            nullptr, nullptr};
  }

  Data predict(const Model&, const FitResult& fitresult,
               const Data& X) const override {
    const auto& fr =
        state_as<ConstantRegressorFit>(fitresult, "ConstantRegressor fit");
    return NormalDistributions(nrows(X), fr.distribution);
  }
};

}  // namespace

std::shared_ptr<const ModelType> constant_classifier_type() {
  static const auto type = std::make_shared<const ConstantClassifierType>();
  return type;
}

std::shared_ptr<const ModelType> constant_regressor_type() {
  static const auto type = std::make_shared<const ConstantRegressorType>();
  return type;
}

}  // namespace modelkit::zoo_detail
