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
#include <numeric>

#include "modelkit/linalg.hpp"
#include "modelkit/zoo.hpp"
#include "zoo_internal.hpp"

namespace modelkit::zoo_detail {

namespace {

class KnnType final : public ZooType {
 public:
  KnnType()
      : ZooType("KNNClassifier", PredictionKind::Probabilistic,
                {Tag::Continuous}, Tag::Finite) {}

  Params default_params() const override { return {{"K", 5}}; }

  FitOutput fit(const Model& model, const Data& X,
                const Column* y) const override {
    const std::int64_t K = model.integer("K");
    const Table& t = as_table(X);
    if (K < 1) fail(ErrorCode::InvalidValue, "KNNClassifier: K must be >= 1");
    if (static_cast<std::size_t>(K) > t.nrows()) {
      fail(ErrorCode::DegenerateData,
           "KNNClassifier: K = " + std::to_string(K) + " exceeds the " +
               std::to_string(t.nrows()) + " training rows");
    }
    auto fr = std::make_shared<KnnFit>();
    fr->X = numeric_matrix(t);
    fr->y = finite_target(*y);
    fr->K = K;
    fr->input_names = t.names();
    return {fr, nullptr, nullptr};
  }

  Data predict(const Model&, const FitResult& fitresult,
               const Data& X) const override {
    const auto& fr = state_as<KnnFit>(fitresult, "KNN fit");
    const Table& t = as_table(X);
    const Eigen::MatrixXd Q = columns_matrix(t, fr.input_names);
    const auto n = static_cast<std::size_t>(fr.X.rows());
    const auto K = static_cast<std::size_t>(fr.K);
    const auto& cat = fr.y.categorical();

    FiniteDistributions out;
    out.reserve(static_cast<std::size_t>(Q.rows()));
    std::vector<std::size_t> order(n);
    std::vector<double> dist(n);
    for (Eigen::Index q = 0; q < Q.rows(); ++q) {
      for (std::size_t i = 0; i < n; ++i) {
        dist[i] = (fr.X.row(static_cast<Eigen::Index>(i)) - Q.row(q)).squaredNorm();
      }
      std::iota(order.begin(), order.end(), std::size_t{0});
      // Distance ties go to the lower training row.
      std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(K),
                        order.end(), [&](std::size_t a, std::size_t b) {
                          return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
                        });
      std::vector<double> counts(cat.pool->size(), 0.0);
      for (std::size_t k = 0; k < K; ++k) counts[cat.codes[order[k]]] += 1.0;
      for (double& c : counts) c /= static_cast<double>(K);
      out.emplace_back(cat.pool, std::move(counts), cat.ordered);
    }
    return out;
  }
};

}  // namespace

std::shared_ptr<const ModelType> knn_type() {
  static const auto type = std::make_shared<const KnnType>();
  return type;
}

}  // namespace modelkit::zoo_detail
