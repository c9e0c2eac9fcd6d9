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
#include <numeric>

#include "modelkit/csv.hpp"
#include "modelkit/evaluation.hpp"
#include "modelkit/registry.hpp"
#include "modelkit/tuning.hpp"
#include "modelkit/zoo.hpp"
#include "network_fixture.hpp"
#include "test_util.hpp"

using namespace modelkit;

namespace {

std::pair<Table, Column> iris_like() {
  const Table data = read_csv(testing::fixture("classification.csv"));
  auto [X, y] = split_target(data, "species");
  return {X, coerce(y, Tag::Multiclass)};
}

}  // namespace

TEST_CASE("classifier predictions cover the full training pool") {
  auto [X, y] = iris_like();
  // Train on rows that exclude one class entirely.
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y.label(i) != "virginica") rows.push_back(i);
  }
  const Data Xs = select_rows(X, rows);
  const Column ys = y.select(rows);
  CHECK(ys.pool()->size() == 3);
  for (const Model& m : {knn_classifier(3), constant_classifier()}) {
    const FitOutput out = fit(m, Xs, ys);
    const Data pd = predict(m, out.fitresult, X);
    const auto& preds = as_finite(pd);
    REQUIRE(preds.size() == X.nrows());
    for (const auto& d : preds) {
      CHECK(d.size() == 3);
      CHECK(d.pdf("virginica") == 0.0);
      CHECK(std::accumulate(d.probs().begin(), d.probs().end(), 0.0) ==
            doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("csv to tuned composite") {
  const Table data = read_csv(testing::fixture("friedman.csv"));
  auto [X, y] = split_target(data, "y");
  const Model pipe = export_model(linear_pipeline(
      "ScaledRidge", {{"scale", standardizer()}, {"ridge", ridge()}}));
  TuningConfig cfg;
  cfg.strategy = Grid{5};
  cfg.resampling = CV{4};
  cfg.ranges = {NumericRange{"ridge.lambda", 0.01, 100, Scale::Log}};
  const Model tuned = tuned_model(pipe, cfg);
  const auto e = evaluate(tuned, X, y, Holdout{0.25}, {"l2", "rms"});
  CHECK(e.measurement[1] == doctest::Approx(std::sqrt(e.per_fold[0][0])));
  const FitOutput out = fit(tuned, X, y);
  const auto& h = tuning_history(out.report);
  CHECK(h.entries.size() == 5);
  CHECK(h.best_model().kind() == "ScaledRidge");
  // A tuned composite still beats predicting the mean.
  const auto baseline = evaluate(constant_regressor(), X, y, CV{4}, {"l2"});
  CHECK(h.entries[h.best].measurement < baseline.measurement[0]);
}

TEST_CASE("registry-driven model search over a task") {
  auto [X, y] = iris_like();
  const Registry r = builtin_registry();
  double best = 1e300;
  std::string winner;
  for (const auto& md : r.matching(schema(X), scitype_of(y))) {
    const Model m = r.instantiate(md.name);
    const auto e = evaluate(m, X, y, CV{3, true, 1}, {"cross_entropy", "misclassification_rate"});
    CHECK(std::isfinite(e.measurement[0]));
    if (e.measurement[1] < best) {
      best = e.measurement[1];
      winner = md.name;
    }
  }
  CHECK(winner == "KNNClassifier");
}

TEST_CASE("ensemble growth inside a machine trains only new atoms") {
  const Table data = read_csv(testing::fixture("friedman.csv"));
  auto [X, y] = split_target(data, "y");
  const MachinePtr m = machine(ensemble_regressor(tree_regressor(4), 3, 0.8, 5), X, y);
  m->fit();
  m->model().set("n", 7);
  CHECK(m->fit() == FitAction::Updated);
  CHECK(state_as<EnsembleReport>(m->report()).atoms_trained == 4);
  const FitOutput fresh = fit(m->model(), X, y);
  CHECK(as_column(predict(*m, X)) == as_column(predict(m->model(), fresh.fitresult, X)));
}

TEST_CASE("box-cox composite on the bundled regression data") {
  const Table data = read_csv(testing::fixture("regression.csv"));
  auto [X, y] = split_target(data, "y");
  std::vector<double> shifted = y.float_values();
  const double lo = *std::min_element(shifted.begin(), shifted.end());
  for (double& v : shifted) v = v - lo + 1.0;
  const Column yp = Column::floats(shifted);
  const Model composite = export_model(testing::box_cox_pca_ridge_blueprint(0.5));
  const auto e = evaluate(composite, X, yp, CV{3}, {"l2"});
  CHECK(e.per_fold[0].size() == 3);
  for (double v : e.per_fold[0]) CHECK(std::isfinite(v));
}
