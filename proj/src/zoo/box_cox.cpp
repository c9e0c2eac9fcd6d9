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
#include <limits>

#include "modelkit/zoo.hpp"
#include "zoo_internal.hpp"

namespace modelkit {

std::vector<double> box_cox_grid() {
  // Integer numerators keep the grid exact at 0 and avoid drift.
  std::vector<double> grid;
  for (int i = -80; i <= 80; ++i) grid.push_back(static_cast<double>(i) / 20.0);
  return grid;
}

double box_cox_transform(double x, double lambda) {
  if (lambda == 0.0) return std::log(x);
  return (std::pow(x, lambda) - 1.0) / lambda;
}

double box_cox_inverse(double z, double lambda) {
  if (lambda == 0.0) return std::exp(z);
  return std::pow(lambda * z + 1.0, 1.0 / lambda);
}

double box_cox_log_likelihood(std::span<const double> x, double lambda) {
  const double n = static_cast<double>(x.size());
  double mean = 0.0;
  double log_sum = 0.0;
  std::vector<double> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    z[i] = box_cox_transform(x[i], lambda);
    mean += z[i];
    log_sum += std::log(x[i]);
  }
  mean /= n;
  double ss = 0.0;
  for (double v : z) ss += (v - mean) * (v - mean);
  const double variance = ss / n;
  return -0.5 * n * std::log(variance) + (lambda - 1.0) * log_sum;
}

namespace zoo_detail {

namespace {

class BoxCoxType final : public ZooType {
 public:
  BoxCoxType()
      : ZooType("BoxCoxTransformer", PredictionKind::Transformer,
                {Tag::Continuous}, std::nullopt, InputShape::Column) {}

  Params default_params() const override { return {}; }

  bool supports(Operation op) const override {
    return op == Operation::Transform || op == Operation::InverseTransform;
  }

  FitOutput fit(const Model&, const Data& X, const Column*) const override {
    const std::vector<double> x = as_column(X).as_doubles();
    if (x.size() < 2) {
      fail(ErrorCode::DegenerateData, "BoxCoxTransformer needs at least 2 values");
    }
    for (double v : x) {
      if (!(v > 0.0)) {
        fail(ErrorCode::DegenerateData,
             "BoxCoxTransformer requires strictly positive data, found " +
                 render_number(v));
      }
    }
    auto report = std::make_shared<BoxCoxReport>();
    report->grid = box_cox_grid();
    double best_ll = -std::numeric_limits<double>::infinity();
    double best_lambda = 1.0;
    for (double lambda : report->grid) {
      const double ll = box_cox_log_likelihood(x, lambda);
      report->log_likelihood.push_back(ll);
      if (ll > best_ll) {
        best_ll = ll;
        best_lambda = lambda;
      }
    }
    if (!std::isfinite(best_ll)) {
      fail(ErrorCode::DegenerateData,
           "BoxCoxTransformer: constant data has no finite likelihood");
    }
    auto fr = std::make_shared<BoxCoxFit>();
    fr->lambda = best_lambda;
    return {fr, nullptr, report};
  }

  Data transform(const Model&, const FitResult& fitresult,
                 const Data& X) const override {
    const double lambda = state_as<BoxCoxFit>(fitresult, "Box-Cox fit").lambda;
    std::vector<double> v = as_column(X).as_doubles();
    for (double& x : v) x = box_cox_transform(x, lambda);
    return Column::floats(std::move(v));
  }

  Data inverse_transform(const Model&, const FitResult& fitresult,
                         const Data& X) const override {
    const double lambda = state_as<BoxCoxFit>(fitresult, "Box-Cox fit").lambda;
    std::vector<double> v = as_column(X).as_doubles();
    for (double& z : v) z = box_cox_inverse(z, lambda);
    return Column::floats(std::move(v));
  }
};

}  // namespace

std::shared_ptr<const ModelType> box_cox_type() {
  static const auto type = std::make_shared<const BoxCoxType>();
  return type;
}

}  // namespace zoo_detail
}  // namespace modelkit
