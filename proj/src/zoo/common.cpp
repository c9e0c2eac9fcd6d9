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

#include <algorithm>

#include "modelkit/linalg.hpp"
#include "modelkit/zoo.hpp"
#include "zoo_internal.hpp"

namespace modelkit {

namespace zoo_detail {

Eigen::MatrixXd columns_matrix(const Table& X,
                               const std::vector<std::string>& names) {
  std::vector<Column> columns;
  columns.reserve(names.size());
  for (const auto& n : names) columns.push_back(X.column(n));
  return numeric_matrix(Table(names, std::move(columns)));
}

Column finite_target(const Column& y) {
  if (y.is_categorical()) return y;
  return coerce(y, Tag::Multiclass);
}

Column float_column(const Eigen::VectorXd& values) {
  return Column::floats(std::vector<double>(values.data(),
                                            values.data() + values.size()));
}

}  // namespace zoo_detail

using namespace zoo_detail;

const std::vector<std::shared_ptr<const ModelType>>& zoo_types() {
  static const std::vector<std::shared_ptr<const ModelType>> types = {
      standardizer_type(),        box_cox_type(),
      pca_type(),                 ridge_type(),
      knn_type(),                 constant_classifier_type(),
      constant_regressor_type(),  tree_type(),
      ensemble_type(),
  };
  return types;
}

std::shared_ptr<const ModelType> find_zoo_type(std::string_view name) {
  for (const auto& t : zoo_types()) {
    if (t->name() == name) return t;
  }
  fail(ErrorCode::UnknownModel, "unknown model: " + std::string(name));
}

Model standardizer() { return standardizer_type()->make(); }
Model box_cox() { return box_cox_type()->make(); }
Model pca(std::int64_t maxoutdim) {
  Model m = pca_type()->make();
  m.set("maxoutdim", maxoutdim);
  return m;
}
Model ridge(double lambda) {
  Model m = ridge_type()->make();
  m.set("lambda", lambda);
  return m;
}
Model knn_classifier(std::int64_t K) {
  Model m = knn_type()->make();
  m.set("K", K);
  return m;
}
Model constant_classifier() { return constant_classifier_type()->make(); }
Model constant_regressor() { return constant_regressor_type()->make(); }
Model tree_regressor(std::int64_t max_depth, std::int64_t min_samples_leaf,
                     std::int64_t n_subfeatures, std::int64_t seed) {
  Model m = tree_type()->make();
  m.set("max_depth", max_depth);
  m.set("min_samples_leaf", min_samples_leaf);
  m.set("n_subfeatures", n_subfeatures);
  m.set("seed", seed);
  return m;
}
Model ensemble_regressor(const Model& atom, std::int64_t n,
                         double bagging_fraction, std::int64_t seed) {
  Model m = ensemble_type()->make();
  m.set("atom", atom);
  m.set("n", n);
  m.set("bagging_fraction", bagging_fraction);
  m.set("seed", seed);
  return m;
}
Model ensemble_regressor() { return ensemble_type()->make(); }

}  // namespace modelkit
