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

#include "modelkit/linalg.hpp"
#include "modelkit/zoo.hpp"
#include "zoo_internal.hpp"

namespace modelkit::zoo_detail {

namespace {

class RidgeType final : public ZooType {
 public:
  RidgeType()
      : ZooType("RidgeRegressor", PredictionKind::Deterministic,
                {Tag::Continuous}, Tag::Continuous) {}

  Params default_params() const override { return {{"lambda", 1.0}}; }

  FitOutput fit(const Model& model, const Data& X,
                const Column* y) const override {
    const double lambda = model.real("lambda");
    if (!(lambda >= 0.0)) {
      fail(ErrorCode::InvalidValue, "RidgeRegressor: lambda must be >= 0");
    }
    const Table& t = as_table(X);
    if (t.nrows() == 0) {
      fail(ErrorCode::DegenerateData, "RidgeRegressor: no training rows");
    }
    const Eigen::MatrixXd A = numeric_matrix(t);
    const std::vector<double> yv = y->as_doubles();
    const Eigen::VectorXd b =
        Eigen::Map<const Eigen::VectorXd>(yv.data(), static_cast<Eigen::Index>(yv.size()));

    const Eigen::VectorXd x_mean = A.colwise().mean().transpose();
    const double y_mean = b.mean();
    const Eigen::MatrixXd Xc = A.rowwise() - x_mean.transpose();
    const Eigen::VectorXd yc = b.array() - y_mean;

    Eigen::MatrixXd gram = Xc.transpose() * Xc;
    gram.diagonal().array() += lambda;
    const Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success) {
      fail(ErrorCode::DegenerateData,
           "RidgeRegressor: normal equations are not positive definite "
           "(collinear features with lambda = 0?)");
    }
    auto fr = std::make_shared<RidgeFit>();
    fr->input_names = t.names();
    fr->coefficients = llt.solve(Xc.transpose() * yc);
    fr->intercept = y_mean - x_mean.dot(fr->coefficients);
    return {fr, nullptr, nullptr};
  }

  Data predict(const Model&, const FitResult& fitresult,
               const Data& X) const override {
    const auto& fr = state_as<RidgeFit>(fitresult, "ridge fit");
    const Eigen::MatrixXd A = columns_matrix(as_table(X), fr.input_names);
    const Eigen::VectorXd yhat =
        (A * fr.coefficients).array() + fr.intercept;
    return float_column(yhat);
  }
};

}  // namespace

std::shared_ptr<const ModelType> ridge_type() {
  static const auto type = std::make_shared<const RidgeType>();
  return type;
}

}  // namespace modelkit::zoo_detail
