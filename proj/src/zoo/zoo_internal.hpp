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

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "modelkit/model.hpp"

namespace modelkit::zoo_detail {

/// Shared plumbing for the native model types: fixed metadata.
class ZooType : public ModelType {
 public:
  ZooType(std::string name, PredictionKind kind, std::vector<Tag> inputs,
          std::optional<Tag> target, InputShape shape = InputShape::Table)
      : name_(std::move(name)),
        kind_(kind),
        inputs_(std::move(inputs)),
        target_(target),
        shape_(shape) {}

  const std::string& name() const override { return name_; }
  PredictionKind prediction_kind() const override { return kind_; }
  std::vector<Tag> input_scitypes() const override { return inputs_; }
  std::optional<Tag> target_scitype() const override { return target_; }
  InputShape input_shape() const override { return shape_; }

 private:
  std::string name_;
  PredictionKind kind_;
  std::vector<Tag> inputs_;
  std::optional<Tag> target_;
  InputShape shape_;
};

/// Matrix of the named columns of X, in the given order.
Eigen::MatrixXd columns_matrix(const Table& X,
                               const std::vector<std::string>& names);

/// Categorical view of a Finite target (booleans become a two-level pool).
Column finite_target(const Column& y);

Column float_column(const Eigen::VectorXd& values);

std::shared_ptr<const ModelType> standardizer_type();
std::shared_ptr<const ModelType> box_cox_type();
std::shared_ptr<const ModelType> pca_type();
std::shared_ptr<const ModelType> ridge_type();
std::shared_ptr<const ModelType> knn_type();
std::shared_ptr<const ModelType> constant_classifier_type();
std::shared_ptr<const ModelType> constant_regressor_type();
std::shared_ptr<const ModelType> tree_type();
std::shared_ptr<const ModelType> ensemble_type();

}  // namespace modelkit::zoo_detail
