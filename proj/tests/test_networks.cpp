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

#include "modelkit/composite.hpp"
#include "modelkit/zoo.hpp"
#include "network_fixture.hpp"
#include "test_util.hpp"

using namespace modelkit;

namespace {

std::vector<std::size_t> counts(const testing::BoxCoxPcaRidge& n) {
  return {n.box_cox->fit_count(), n.pca->fit_count(), n.ridge->fit_count()};
}

using Actions = std::vector<FitAction>;
constexpr auto F = FitAction::Fitted;
constexpr auto U = FitAction::Updated;
constexpr auto S = FitAction::Skipped;

}  // namespace

TEST_CASE("sources") {
  const SourcePtr s = source();
  CHECK(s->version() == 0);
  CHECK(is_empty(s->content()));
  CHECK_ERROR_CODE(s->call(), ErrorCode::EmptySource);
  rebind(s, Column::floats({1, 2}));
  rebind(s, Column::floats({3, 4}));
  CHECK(s->version() == 2);
  CHECK(as_column(s->call()) == Column::floats({3, 4}));
  // Only input-role sources substitute new data.
  const SourcePtr in = source(Column::floats({1}), SourceRole::Input);
  CHECK(as_column(in->call(Column::floats({9}))) == Column::floats({9}));
  CHECK(as_column(s->call(Column::floats({9}))) == Column::floats({3, 4}));
}

TEST_CASE("function nodes") {
  const SourcePtr s = source(Column::floats({1, 2, 3}));
  const NodePtr id = fn_node("identity", [](const std::vector<Data>& a) { return a[0]; }, {s});
  CHECK(as_column(id->call()) == Column::floats({1, 2, 3}));
  CHECK(id->args().size() == 1);
  CHECK(id->label() == "identity");
  CHECK(id->machine() == nullptr);
}

TEST_CASE("nodes share machines") {
  const auto [X, y] = testing::positive_regression(30, 1);
  const auto n = testing::box_cox_pca_ridge(X, y);
  CHECK(n.z->args().size() == 1);
  CHECK(n.z->machine()->get() == n.yhat->machine()->get());
  CHECK_ERROR_CODE(n.yhat->call(), ErrorCode::NotTrained);
  const auto order = training_order({n.yhat});
  REQUIRE(order.size() == 3);
  CHECK(order[0] == n.box_cox);
  CHECK(order[1] == n.pca);
  CHECK(order[2] == n.ridge);
}

TEST_CASE("smart retraining on the three-machine network") {
  const auto [X, y] = testing::positive_regression(40, 2);
  auto n = testing::box_cox_pca_ridge(X, y);
  TrainingLog log = fit_node(n.yhat);
  CHECK(log.actions() == Actions{F, F, F});
  CHECK(log.render() ==
        "machine1(BoxCoxTransformer) => fitted\n"
        "machine2(PCA) => fitted\n"
        "machine3(RidgeRegressor) => fitted\n");
  CHECK(fit_node(n.yhat).actions() == Actions{S, S, S});

  n.ridge->model().set("lambda", 5.0);
  CHECK(fit_node(n.yhat).actions() == Actions{S, S, U});
  CHECK(counts(n) == std::vector<std::size_t>{1, 1, 2});

  const auto [X2, y2] = testing::positive_regression(40, 3);
  rebind(n.X, X2);
  CHECK(fit_node(n.yhat).actions() == Actions{S, F, F});

  n.pca->model().set("maxoutdim", 1);
  CHECK(fit_node(n.yhat).actions() == Actions{S, U, F});

  rebind(n.y, y2);
  CHECK(fit_node(n.yhat).actions() == Actions{F, S, F});
  CHECK(fit_node(n.yhat, true).actions() == Actions{F, F, F});
  CHECK(fit_node(n.yhat, false, all_rows(30)).actions() == Actions{F, F, F});
}

TEST_CASE("fitting an intermediate node trains only its ancestry") {
  const auto [X, y] = testing::positive_regression(20, 4);
  auto n = testing::box_cox_pca_ridge(X, y);
  const TrainingLog log = fit_node(n.Xr);
  REQUIRE(log.entries.size() == 1);
  CHECK(log.entries[0].machine == n.pca);
  CHECK(log.render() == "machine1(PCA) => fitted\n");
  CHECK_FALSE(n.ridge->trained());
}

TEST_CASE("calling the network equals composing the fitted models") {
  const auto [X, y] = testing::positive_regression(40, 5);
  const auto [Xnew, unused] = testing::positive_regression(10, 6);
  auto n = testing::box_cox_pca_ridge(X, y, 0.3);
  fit_node(n.yhat);

  const FitOutput bc = fit(box_cox(), y);
  const Column z = as_column(transform(box_cox(), bc.fitresult, y));
  const FitOutput pc = fit(pca(2), X);
  const FitOutput rr = fit(ridge(0.3), transform(pca(2), pc.fitresult, X), z);
  auto manual = [&](const Data& D) {
    const Data scores = transform(pca(2), pc.fitresult, D);
    return as_column(inverse_transform(box_cox(), bc.fitresult,
                                       predict(ridge(0.3), rr.fitresult, scores)));
  };
  CHECK(as_column(n.yhat->call()) == manual(X));
  CHECK(as_column(n.yhat->call(Xnew)) == manual(Xnew));
  CHECK(as_column(n.yhat->call()) == manual(X));
}

TEST_CASE("graph clones preserve ids, sharing and state") {
  const auto [X, y] = testing::positive_regression(20, 7);
  auto n = testing::box_cox_pca_ridge(X, y);
  fit_node(n.yhat);
  GraphCloner cloner;
  const NodePtr copy = cloner.node(n.yhat);
  CHECK(copy != n.yhat);
  CHECK(copy->id() == n.yhat->id());
  CHECK(as_column(copy->call()) == as_column(n.yhat->call()));
  CHECK(fit_node(copy).actions() == Actions{S, S, S});
  const MachinePtr bc = *copy->machine();
  CHECK(bc != n.box_cox);
  CHECK(bc->id() == n.box_cox->id());
  // The copy's transform node reaches the same cloned box-cox machine.
  const NodePtr zhat = copy->args()[0];
  const NodePtr Xr = zhat->args()[0];
  const MachinePtr r = *zhat->machine();
  CHECK(r->args()[0] == Xr);
  r->model().set("lambda", 9.0);
  CHECK(n.ridge->model().real("lambda") == 1.0);
}

TEST_CASE("blueprint validation") {
  Blueprint empty("Empty", PredictionKind::Deterministic);
  CHECK_ERROR_CODE(empty.validate(), ErrorCode::InvalidBlueprint);

  Blueprint unslotted("Unslotted", PredictionKind::Deterministic);
  const MachinePtr loose = machine(ridge(), unslotted.input(), unslotted.target());
  unslotted.terminal(Operation::Predict, node(Operation::Predict, loose, unslotted.input()));
  CHECK_ERROR_CODE(export_blueprint(unslotted), ErrorCode::InvalidBlueprint);

  Blueprint no_predict("NoPredict", PredictionKind::Deterministic);
  const MachinePtr s = no_predict.machine("scale", standardizer(), {no_predict.input()});
  no_predict.terminal(Operation::Transform, node(Operation::Transform, s, no_predict.input()));
  CHECK_ERROR_CODE(no_predict.validate(), ErrorCode::InvalidBlueprint);

  Blueprint bp("Slots", PredictionKind::Transformer);
  CHECK_ERROR_CODE(bp.machine("missing", {bp.input()}), ErrorCode::InvalidBlueprint);
  const MachinePtr a = bp.machine("scale", standardizer(), {bp.input()});
  const MachinePtr b = bp.machine("scale", {bp.input()});
  CHECK(a != b);
  CHECK(bp.slots().size() == 1);
}

TEST_CASE("exported composite equals the hand-built network") {
  const auto [X, y] = testing::positive_regression(40, 8);
  const auto [Xnew, unused] = testing::positive_regression(15, 9);
  const Model composite = export_model(testing::box_cox_pca_ridge_blueprint(0.7));
  CHECK(composite.kind() == "BoxCoxPcaRidge");
  CHECK(composite.submodel("ridge_regressor") == ridge(0.7));
  auto n = testing::box_cox_pca_ridge(X, y, 0.7);
  fit_node(n.yhat);

  const FitOutput out = fit(composite, X, y);
  CHECK(as_column(predict(composite, out.fitresult, Xnew)) == as_column(n.yhat->call(Xnew)));
  CHECK(state_as<CompositeReport>(out.report).log.actions() == Actions{F, F, F});

  const Model changed = set_param(composite, "ridge_regressor.lambda", 2.0);
  const FitOutput updated = update(changed, out, X, &y);
  CHECK(state_as<CompositeReport>(updated.report).log.actions() == Actions{S, S, U});
  const FitOutput fresh = fit(changed, X, y);
  CHECK(as_column(predict(changed, updated.fitresult, Xnew)) ==
        as_column(predict(changed, fresh.fitresult, Xnew)));
  // The earlier fit result is untouched by the update.
  CHECK(as_column(predict(composite, out.fitresult, Xnew)) == as_column(n.yhat->call(Xnew)));
  CHECK_ERROR_CODE(transform(composite, out.fitresult, Xnew), ErrorCode::UnsupportedOperation);
}

TEST_CASE("composites nest inside machines") {
  const auto [X, y] = testing::positive_regression(30, 10);
  const Model composite = export_model(testing::box_cox_pca_ridge_blueprint());
  const MachinePtr m = machine(composite, X, y);
  CHECK(m->fit() == FitAction::Fitted);
  CHECK(m->fit() == FitAction::Skipped);
  m->model().set("ridge_regressor.lambda", 0.1);
  CHECK(m->fit() == FitAction::Updated);
  CHECK(state_as<CompositeReport>(m->report()).log.actions() == Actions{S, S, U});
  m->model().set("reducer", pca(1));
  CHECK(m->fit() == FitAction::Updated);
  CHECK(state_as<CompositeReport>(m->report()).log.actions() == Actions{S, U, F});
}

TEST_CASE("linear pipeline") {
  const auto [X, y] = testing::positive_regression(30, 11);
  const Model pipe =
      export_model(linear_pipeline("Pipe", {{"scale", standardizer()}, {"ridge", ridge(0.5)}}));
  std::vector<std::string> names;
  for (const auto& [k, v] : pipe.params()) names.push_back(k);
  CHECK(names == std::vector<std::string>{"scale", "ridge"});
  CHECK(pipe.type().target_scitype() == Tag::Continuous);

  const FitOutput out = fit(pipe, X, y);
  const FitOutput s = fit(standardizer(), X);
  const Data Xs = transform(standardizer(), s.fitresult, X);
  const FitOutput r = fit(ridge(0.5), Xs, y);
  CHECK(as_column(predict(pipe, out.fitresult, X)) ==
        as_column(predict(ridge(0.5), r.fitresult, Xs)));

  const Model tpipe = export_model(linear_pipeline("Reduce", {{"scale", standardizer()},
                                                              {"pca", pca(1)}}));
  CHECK(tpipe.type().prediction_kind() == PredictionKind::Transformer);
  const FitOutput t = fit(tpipe, X);
  CHECK(as_table(transform(tpipe, t.fitresult, X)).names() == std::vector<std::string>{"pc1"});
  CHECK_ERROR_CODE(linear_pipeline("Bad", {{"r", ridge()}, {"s", standardizer()}}),
                   ErrorCode::InvalidBlueprint);
}

TEST_CASE("target-transformed regressor") {
  const auto [X, y] = testing::positive_regression(30, 12);
  const Model m = export_model(target_transformed_regressor("LogRidge", ridge(0.2), box_cox()));
  const FitOutput out = fit(m, X, y);
  const FitOutput bc = fit(box_cox(), y);
  const Column z = as_column(transform(box_cox(), bc.fitresult, y));
  const FitOutput r = fit(ridge(0.2), X, z);
  CHECK(as_column(predict(m, out.fitresult, X)) ==
        as_column(inverse_transform(box_cox(), bc.fitresult,
                                    predict(ridge(0.2), r.fitresult, X))));
  const FitOutput again = update(set_param(m, "regressor.lambda", 1.0), out, X, &y);
  CHECK(state_as<CompositeReport>(again.report).log.actions() == Actions{S, U});
}
