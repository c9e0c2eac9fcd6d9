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

// Acceptance checks: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "modelkit/cli.hpp"
#include "modelkit/composite.hpp"
#include "modelkit/csv.hpp"
#include "modelkit/evaluation.hpp"
#include "modelkit/measures.hpp"
#include "modelkit/registry.hpp"
#include "modelkit/tuning.hpp"
#include "modelkit/zoo.hpp"
#include "network_fixture.hpp"

using namespace modelkit;

namespace {

struct Result {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string list(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + render_number(v[i]);
  return s + "]";
}

std::string fixture(const std::string& name) {
  return std::string(MODELKIT_FIXTURES) + "/" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Table floats_table(const std::vector<std::pair<std::string, std::vector<double>>>& cols) {
  std::vector<std::string> names;
  std::vector<Column> columns;
  for (const auto& [n, v] : cols) {
    names.push_back(n);
    columns.push_back(Column::floats(v));
  }
  return Table(names, columns);
}

using Actions = std::vector<FitAction>;

std::string render(const Actions& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? ", " : "") + std::string(to_string(a[i]));
  return s + "]";
}

// ---------------------------------------------------------------------------

Result ac1() {
  Result r;
  const auto [X, y] = testing::positive_regression(200, 1);
  auto n = testing::box_cox_pca_ridge(X, y);
  const Actions first = fit_node(n.yhat).actions();
  r.require(first == Actions{FitAction::Fitted, FitAction::Fitted, FitAction::Fitted},
            "first pass " + render(first));
  const std::size_t c1 = n.box_cox->fit_count();
  const std::size_t c2 = n.pca->fit_count();
  n.ridge->model().set("lambda", 2.0);
  const Actions second = fit_node(n.yhat).actions();
  r.require(second == Actions{FitAction::Skipped, FitAction::Skipped, FitAction::Updated},
            "after lambda change " + render(second));
  r.require(n.box_cox->fit_count() == c1 && n.pca->fit_count() == c2,
            "machine1/machine2 fit counts changed");
  const auto [X2, y2] = testing::positive_regression(200, 2);
  rebind(n.X, X2);
  const std::size_t b1 = n.box_cox->fit_count();
  const Actions third = fit_node(n.yhat).actions();
  r.require(third == Actions{FitAction::Skipped, FitAction::Fitted, FitAction::Fitted},
            "after rebinding X " + render(third));
  r.require(n.box_cox->fit_count() == b1, "machine1 retrained after rebinding X");
  if (r.pass) r.detail = "logs " + render(first) + " " + render(second) + " " + render(third);
  return r;
}

// Three small DAG shapes used by the from-scratch equivalence check.
struct Dag {
  SourcePtr X, y;
  std::vector<MachinePtr> machines;
  NodePtr terminal;
};

Dag build_dag(int kind, const Data& X, const Column& y, const std::vector<Model>& models) {
  Dag d;
  d.X = source(X, SourceRole::Input);
  d.y = source(y, SourceRole::Target);
  if (kind == 0) {
    const auto m1 = machine(models[0], d.y);
    const NodePtr z = node(Operation::Transform, m1, d.y);
    const auto m2 = machine(models[1], d.X);
    const NodePtr Xr = node(Operation::Transform, m2, d.X);
    const auto m3 = machine(models[2], Xr, z);
    d.terminal = node(Operation::InverseTransform, m1, node(Operation::Predict, m3, Xr));
    d.machines = {m1, m2, m3};
  } else if (kind == 1) {
    const auto m1 = machine(models[0], d.X);
    const NodePtr Xs = node(Operation::Transform, m1, d.X);
    const auto m2 = machine(models[1], Xs);
    const NodePtr Xp = node(Operation::Transform, m2, Xs);
    const auto m3 = machine(models[2], Xp, d.y);
    d.terminal = node(Operation::Predict, m3, Xp);
    d.machines = {m1, m2, m3};
  } else {
    const auto m1 = machine(models[0], d.X);
    const NodePtr Xs = node(Operation::Transform, m1, d.X);
    const auto m2 = machine(models[1], Xs, d.y);
    const auto m3 = machine(models[2], Xs, d.y);
    const NodePtr p1 = node(Operation::Predict, m2, Xs);
    const NodePtr p2 = node(Operation::Predict, m3, Xs);
    d.terminal = fn_node("average",
                         [](const std::vector<Data>& a) {
                           std::vector<double> v = as_column(a[0]).float_values();
                           const auto& w = as_column(a[1]).float_values();
                           for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.5 * (v[i] + w[i]);
                           return Data(Column::floats(v));
                         },
                         {p1, p2});
    d.machines = {m1, m2, m3};
  }
  return d;
}

std::vector<Model> dag_models(int kind) {
  if (kind == 0) return {box_cox(), pca(2), ridge(1.0)};
  if (kind == 1) return {standardizer(), pca(2), ensemble_regressor(tree_regressor(3), 3, 0.8, 4)};
  return {standardizer(), ridge(0.5), tree_regressor(3)};
}

void mutate(int kind, Dag& d, Rng& rng) {
  auto& ms = d.machines;
  const auto pick = rng.below(kind == 1 ? 4 : 2);
  if (kind == 0) {
    if (pick == 0) ms[1]->model().set("maxoutdim", rng.integer(1, 3));
    else ms[2]->model().set("lambda", rng.uniform(0.01, 5.0));
  } else if (kind == 1) {
    if (pick == 0) ms[1]->model().set("maxoutdim", rng.integer(1, 3));
    else if (pick == 1) ms[2]->model().set("n", rng.integer(1, 6));
    else if (pick == 2) ms[2]->model().set("atom.max_depth", rng.integer(1, 4));
    else ms[2]->model().set("bagging_fraction", rng.uniform(0.5, 1.0));
  } else {
    if (pick == 0) ms[1]->model().set("lambda", rng.uniform(0.01, 5.0));
    else ms[2]->model().set(rng.below(2) ? "max_depth" : "min_samples_leaf", rng.integer(1, 4));
  }
}

Result ac2() {
  Result r;
  Rng rng(77);
  double worst = 0.0;
  std::map<FitAction, std::size_t> tally;
  std::size_t steps = 0;
  for (int seq = 0; seq < 200; ++seq) {
    const int kind = seq % 3;
    auto [X, y] = testing::positive_regression(30, 1000 + seq);
    Dag d = build_dag(kind, X, y, dag_models(kind));
    std::optional<std::vector<std::size_t>> rows;
    const auto [Xnew, unused] = testing::positive_regression(8, 5000 + seq);
    for (int step = 0; step < 6; ++step) {
      bool force = false;
      switch (rng.below(6)) {
        case 0:
        case 1: mutate(kind, d, rng); break;
        case 2: {
          auto [X2, y2] = testing::positive_regression(30, rng.next());
          X = X2;
          rebind(d.X, X);
          break;
        }
        case 3: {
          auto [X2, y2] = testing::positive_regression(30, rng.next());
          y = y2;
          rebind(d.y, y);
          break;
        }
        case 4:
          if (rng.below(2)) {
            rows.reset();
          } else {
            rows = rng.sample_without_replacement(30, static_cast<std::size_t>(rng.integer(15, 30)));
            std::sort(rows->begin(), rows->end());
          }
          break;
        default: force = rng.below(4) == 0; break;
      }
      for (const auto& e : fit_node(d.terminal, force, rows).entries) ++tally[e.action];
      ++steps;

      std::vector<Model> current;
      for (const auto& m : d.machines) current.push_back(m->model());
      Dag oracle = build_dag(kind, X, y, current);
      fit_node(oracle.terminal, false, rows);
      worst = std::max(worst, max_abs_diff(as_column(d.terminal->call()).float_values(),
                                           as_column(oracle.terminal->call()).float_values()));
      worst = std::max(worst, max_abs_diff(as_column(d.terminal->call(Xnew)).float_values(),
                                           as_column(oracle.terminal->call(Xnew)).float_values()));
    }
  }
  r.require(worst <= 1e-10, "max |delta| " + fmt("%.3g", worst));
  r.require(tally[FitAction::Skipped] > 0 && tally[FitAction::Updated] > 0,
            "sequences never exercised skip/update");
  r.detail += (r.detail.empty() ? "" : "; ") + std::string("200 sequences, ") +
              std::to_string(steps) + " passes, max |delta| " + fmt("%.3g", worst) + ", actions " +
              std::to_string(tally[FitAction::Fitted]) + " fitted / " +
              std::to_string(tally[FitAction::Updated]) + " updated / " +
              std::to_string(tally[FitAction::Skipped]) + " skipped";
  return r;
}

Result ac3() {
  Result r;
  const Table data = read_csv(fixture("friedman.csv"));
  const auto [X, y] = split_target(data, "y");
  const Model ten = ensemble_regressor(tree_regressor(), 10, 0.8, 7);
  const Model twenty = set_param(ten, "n", 20);
  const FitOutput first = fit(ten, X, y);
  const FitOutput grown = update(twenty, first, X, &y);
  const auto& rep = state_as<EnsembleReport>(grown.report);
  r.require(rep.warm_restart && rep.atoms_trained == 10,
            "atoms trained " + std::to_string(rep.atoms_trained));
  const auto& a = state_as<EnsembleFit>(first.fitresult).atoms;
  const auto& b = state_as<EnsembleFit>(grown.fitresult).atoms;
  bool identical = b.size() == 20;
  for (std::size_t i = 0; identical && i < 10; ++i) {
    identical = state_as<TreeFit>(a[i]) == state_as<TreeFit>(b[i]);
  }
  r.require(identical, "first ten atoms differ");
  const FitOutput fresh = fit(twenty, X, y);
  r.require(as_column(predict(twenty, grown.fitresult, X)) ==
                as_column(predict(twenty, fresh.fitresult, X)),
            "grown predictions differ from a fresh n=20 fit");
  if (r.pass) r.detail = "10 new atoms, first 10 identical, predictions exact";
  return r;
}

// Gaussian elimination on the centred normal equations.
std::vector<double> dense_ridge(const std::vector<std::vector<double>>& X,
                                const std::vector<double>& y, double lambda,
                                double& intercept) {
  const std::size_t n = y.size(), p = X[0].size();
  std::vector<double> xm(p, 0.0);
  double ym = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ym += y[i] / n;
    for (std::size_t j = 0; j < p; ++j) xm[j] += X[i][j] / n;
  }
  std::vector<std::vector<double>> a(p, std::vector<double>(p + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      for (std::size_t k = 0; k < p; ++k) a[j][k] += (X[i][j] - xm[j]) * (X[i][k] - xm[k]);
      a[j][p] += (X[i][j] - xm[j]) * (y[i] - ym);
    }
  }
  for (std::size_t j = 0; j < p; ++j) a[j][j] += lambda;
  for (std::size_t c = 0; c < p; ++c) {
    for (std::size_t r = c + 1; r < p; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= p; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<double> beta(p);
  for (std::size_t i = p; i-- > 0;) {
    double s = a[i][p];
    for (std::size_t k = i + 1; k < p; ++k) s -= a[i][k] * beta[k];
    beta[i] = s / a[i][i];
  }
  intercept = ym;
  for (std::size_t j = 0; j < p; ++j) intercept -= xm[j] * beta[j];
  return beta;
}

Result ac4() {
  Result r;
  const std::vector<std::vector<double>> rows{{0, 1}, {1, 0}, {2, 3}, {3, 1}, {4, 5}, {5, 2}};
  std::vector<double> x1, x2, y;
  for (const auto& row : rows) {
    x1.push_back(row[0]);
    x2.push_back(row[1]);
    y.push_back(2 * row[0] - row[1] + 3);
  }
  const Table X = floats_table({{"x1", x1}, {"x2", x2}});
  const Column yc = Column::floats(y);
  const FitOutput out = fit(ridge(0.0), X, yc);
  const auto& fr = state_as<RidgeFit>(out.fitresult);
  double oracle_b0 = 0.0;
  const auto oracle = dense_ridge(rows, y, 0.0, oracle_b0);
  const std::vector<double> beta{fr.coefficients(0), fr.coefficients(1)};
  const double dev = std::max({max_abs_diff(beta, oracle), max_abs_diff(beta, {2, -1}),
                               std::abs(fr.intercept - oracle_b0), std::abs(fr.intercept - 3)});
  r.require(dev <= 1e-8, "coefficient deviation " + fmt("%.3g", dev));
  std::vector<double> norms;
  for (double lambda : {0.1, 1.0, 10.0, 100.0}) {
    const FitOutput o = fit(ridge(lambda), X, yc);
    norms.push_back(state_as<RidgeFit>(o.fitresult).coefficients.norm());
  }
  r.require(std::is_sorted(norms.rbegin(), norms.rend()) &&
                std::adjacent_find(norms.begin(), norms.end()) == norms.end(),
            "norms not decreasing " + list(norms));
  if (r.pass) {
    r.detail = "beta " + list(beta) + ", intercept " + render_number(fr.intercept) +
               ", max dev " + fmt("%.3g", dev) + ", norms " + fmt("%.4g", norms[0]) + " > " +
               fmt("%.4g", norms[1]) + " > " + fmt("%.4g", norms[2]) + " > " +
               fmt("%.4g", norms[3]);
  }
  return r;
}

Result ac5() {
  Result r;
  std::vector<double> a, b;
  // Each point along (1,1) appears with both signs of a (1,-1) offset, so
  // the two directions are exactly uncorrelated.
  for (int t = -10; t <= 10; ++t) {
    for (double across : {0.2, -0.2}) {
      a.push_back(t * 0.5 + across);
      b.push_back(t * 0.5 - across);
    }
  }
  const FitOutput out = fit(pca(), floats_table({{"a", a}, {"b", b}}));
  const auto& P = state_as<PcaFit>(out.fitresult).projection;
  const double h = 1.0 / std::sqrt(2.0);
  const double dev = std::max(std::abs(P(0, 0) - h), std::abs(P(1, 0) - h));
  const double ortho = (P.transpose() * P - Eigen::MatrixXd::Identity(P.cols(), P.cols()))
                           .cwiseAbs()
                           .maxCoeff();
  r.require(dev <= 1e-8, "first component deviation " + fmt("%.3g", dev));
  r.require(ortho <= 1e-10, "orthonormality error " + fmt("%.3g", ortho));
  if (r.pass) {
    r.detail = "first component (" + render_number(P(0, 0)) + ", " + render_number(P(1, 0)) +
               "), orthonormality error " + fmt("%.3g", ortho);
  }
  return r;
}

Result ac6() {
  Result r;
  std::vector<double> x;
  for (int k = -20; k <= 20; ++k) x.push_back(std::exp(0.1 * k));
  const FitOutput out = fit(box_cox(), Column::floats(x));
  const double lambda = state_as<BoxCoxFit>(out.fitresult).lambda;
  r.require(std::abs(lambda) <= 0.05, "lambda " + render_number(lambda));
  double worst = 0.0;
  for (double l : {-2.0, 0.0, 0.5, 1.0}) {
    for (double v : {0.05, 0.5, 1.0, 2.5, 17.0}) {
      worst = std::max(worst, std::abs(box_cox_inverse(box_cox_transform(v, l), l) - v));
    }
  }
  r.require(worst <= 1e-10, "round trip error " + fmt("%.3g", worst));
  if (r.pass) r.detail = "lambda " + render_number(lambda) + ", round trip error " + fmt("%.3g", worst);
  return r;
}

Result ac7() {
  Result r;
  const std::vector<std::string> ab{"a", "b"};
  struct Case {
    const char* name;
    double got, want;
  };
  const std::vector<Case> cases{
      {"brier point mass", brier_score(UnivariateFinite(ab, {1.0, 0.0}), "a"), 0.0},
      {"brier uniform/a", brier_score(UnivariateFinite(ab, {0.5, 0.5}), "a"), -0.5},
      {"brier uniform/b", brier_score(UnivariateFinite(ab, {0.5, 0.5}), "b"), -0.5},
      {"brier (0.7,0.3)/a", brier_score(UnivariateFinite(ab, {0.7, 0.3}), "a"),
       -((0.7 - 1) * (0.7 - 1) + 0.3 * 0.3)},
      {"cross_entropy 0.5", cross_entropy(UnivariateFinite(ab, {0.5, 0.5}), "a"), std::log(2.0)},
      {"l2_hinge p=1 pos", l2_hinge(UnivariateFinite(ab, {0.0, 1.0}), "b"), 0.0},
      {"l2_hinge p=0.5", l2_hinge(UnivariateFinite(ab, {0.5, 0.5}), "a"), 1.0},
      {"l2_hinge p=0 pos", l2_hinge(UnivariateFinite(ab, {1.0, 0.0}), "b"), 4.0},
  };
  double worst = 0.0;
  for (const auto& c : cases) {
    const double d = std::abs(c.got - c.want);
    worst = std::max(worst, d);
    r.require(d <= 1e-12, std::string(c.name) + " = " + render_number(c.got));
  }
  r.require(std::abs(cases[3].want + 0.18) <= 1e-12, "hand oracle for (0.7,0.3) is not -0.18");
  if (r.pass) r.detail = std::to_string(cases.size()) + " cases, max |error| " + fmt("%.3g", worst);
  return r;
}

Result ac8() {
  Result r;
  std::vector<std::size_t> sizes;
  for (const auto& p : train_test_pairs(CV{6}, 13)) sizes.push_back(p.test.size());
  r.require(sizes == std::vector<std::size_t>{3, 2, 2, 2, 2, 2}, "CV(6) sizes on N=13 wrong");
  bool partition = true;
  for (std::size_t n : {6u, 13u, 29u}) {
    for (bool shuffle : {false, true}) {
      std::vector<std::size_t> seen;
      for (const auto& p : train_test_pairs(CV{4, shuffle, 3}, n)) {
        seen.insert(seen.end(), p.test.begin(), p.test.end());
      }
      std::sort(seen.begin(), seen.end());
      partition = partition && seen == all_rows(n);
    }
  }
  r.require(partition, "CV test sets do not partition the rows");
  const Table X = floats_table({{"x", {0, 0, 0, 0, 0, 0}}});
  const Column y = Column::floats({1, 2, 3, 4, 5, 6});
  const auto e = evaluate(constant_regressor(), X, y, CV{3}, {"l2"});
  const double dev = max_abs_diff(e.per_fold[0], {12.25, 0.25, 12.25});
  r.require(dev <= 1e-12, "per_fold " + list(e.per_fold[0]) +
                              " vs expected [12.25, 0.25, 12.25] (fold 1: train mean 4.5, test "
                              "y=1,2, mean of 12.25 and 6.25 is 9.25)");
  const double mean = (e.per_fold[0][0] + e.per_fold[0][1] + e.per_fold[0][2]) / 3.0;
  r.require(std::abs(e.measurement[0] - mean) <= 1e-12, "measurement is not the fold mean");
  if (r.pass) r.detail = "sizes [3,2,2,2,2,2], per_fold " + list(e.per_fold[0]);
  return r;
}

Result ac9() {
  Result r;
  const Table data = read_csv(fixture("friedman.csv"));
  const auto [X, y] = split_target(data, "y");
  r.require(X.nrows() == 100, "dataset has " + std::to_string(X.nrows()) + " rows");
  const Model base = ensemble_regressor();
  TuningConfig cfg;
  cfg.resampling = CV{3};
  cfg.ranges = {range(base, "atom.n_subfeatures", 1, 9), range(base, "bagging_fraction", 0.4, 1.0)};
  const Model tuned = tuned_model(base, cfg, 25, 42);
  const FitOutput a = fit(tuned, X, y);
  const FitOutput b = fit(tuned, X, y);
  const auto& h = tuning_history(a.report);
  r.require(h.entries.size() == 25, std::to_string(h.entries.size()) + " evaluations");
  bool bounded = true, best_ok = true;
  for (const auto& e : h.entries) {
    const auto k = e.model.integer("atom.n_subfeatures");
    const double f = e.model.real("bagging_fraction");
    bounded = bounded && k >= 1 && k <= 9 && f >= 0.4 && f <= 1.0;
    best_ok = best_ok && h.entries[h.best].measurement <= e.measurement;
  }
  r.require(bounded, "a sampled value is out of bounds");
  r.require(best_ok, "best is not minimal");
  r.require(h.to_csv() == tuning_history(b.report).to_csv(), "history differs between runs");

  std::vector<double> x1, x2, yy;
  Rng rng(3);
  for (int i = 0; i < 12; ++i) {
    x1.push_back(rng.uniform(-3, 3));
    x2.push_back(rng.uniform(-3, 3));
    yy.push_back(2 * x1.back() - x2.back() + 3);
  }
  TuningConfig grid;
  grid.strategy = Grid{2};
  grid.resampling = CV{3};
  grid.ranges = {NumericRange{"lambda", 0, 1000}};
  const FitOutput g = fit(tuned_model(ridge(), grid), floats_table({{"x1", x1}, {"x2", x2}}),
                          Column::floats(yy));
  const double chosen = best_model(g.report).real("lambda");
  r.require(chosen == 0.0, "grid chose lambda " + render_number(chosen));
  if (r.pass) {
    r.detail = "25 evaluations, best l2 " + fmt("%.4g", h.entries[h.best].measurement) +
               " at entry " + std::to_string(h.best + 1) + ", deterministic history, grid chose 0";
  }
  return r;
}

Result ac10() {
  Result r;
  const Table data = read_csv(fixture("classification.csv"));
  auto [X, yraw] = split_target(data, "species");
  const Column y = coerce(yraw, Tag::Multiclass);
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y.label(i) != "virginica") rows.push_back(i);
  }
  std::size_t checked = 0;
  double worst = 0.0;
  for (const auto& type : zoo_types()) {
    if (type->prediction_kind() != PredictionKind::Probabilistic ||
        type->target_scitype() != Tag::Finite) {
      continue;
    }
    const Model m = type->make();
    const FitOutput out = fit(m, select_rows(X, rows), y.select(rows));
    const Data pd = predict(m, out.fitresult, X);
    for (const auto& d : as_finite(pd)) {
      r.require(d.size() == 3 && d.pool() == y.pool(), type->name() + " lost pool levels");
      r.require(d.pdf("virginica") == 0.0, type->name() + " gave mass to an unseen class");
      worst = std::max(worst, std::abs(std::accumulate(d.probs().begin(), d.probs().end(), 0.0) - 1.0));
    }
    const auto e = evaluate(m, X, y, CV{3, true, 1}, {"brier_score", "cross_entropy"});
    r.require(std::isfinite(e.measurement[0]) && std::isfinite(e.measurement[1]),
              type->name() + " evaluation not finite");
    ++checked;
  }
  r.require(worst <= 1e-9, "probabilities sum off by " + fmt("%.3g", worst));
  const auto [Xr, yr] = testing::positive_regression(12, 2);
  bool mismatch = false;
  try {
    evaluate(ridge(), Xr, yr, CV{3}, {"brier_score"});
  } catch (const Error& e) {
    mismatch = e.code() == ErrorCode::MeasureModelMismatch;
  }
  r.require(mismatch, "deterministic model accepted a probabilistic measure");
  if (r.pass) {
    r.detail = std::to_string(checked) + " classifiers, full pools, max |sum-1| " +
               fmt("%.3g", worst) + ", MeasureModelMismatch raised";
  }
  return r;
}

Result ac11() {
  Result r;
  const auto [X, y] = testing::positive_regression(120, 11);
  std::vector<std::size_t> train(90), test(30);
  std::iota(train.begin(), train.end(), 0);
  std::iota(test.begin(), test.end(), 90);
  const Data Xtr = select_rows(X, train), Xte = select_rows(X, test);
  const Column ytr = y.select(train);

  auto net = testing::box_cox_pca_ridge(Xtr, ytr);
  fit_node(net.yhat);
  const Model composite = export_model(testing::box_cox_pca_ridge_blueprint());
  const FitOutput out = fit(composite, Xtr, ytr);
  r.require(as_column(predict(composite, out.fitresult, Xte)) == as_column(net.yhat->call(Xte)),
            "composite and network predictions differ");

  const MachinePtr m = machine(composite, Xtr, ytr);
  r.require(m->fit() == FitAction::Fitted && m->fit() == FitAction::Skipped,
            "machine binding misbehaves");
  r.require(as_column(predict(*m, Xte)) == as_column(net.yhat->call(Xte)),
            "machine predictions differ");
  m->model() = set_param(m->model(), "ridge_regressor.lambda", 2.0);
  r.require(m->fit() == FitAction::Updated, "composite not updated after set_param");
  const Actions inner = state_as<CompositeReport>(m->report()).log.actions();
  r.require(inner == Actions{FitAction::Skipped, FitAction::Skipped, FitAction::Updated},
            "inner log " + render(inner));
  const auto e = evaluate(composite, X, y, CV{4}, {"l2", "rms"});
  r.require(std::isfinite(e.measurement[0]), "evaluate failed");
  if (r.pass) {
    r.detail = "held-out predictions exact, inner log " + render(inner) + ", CV(4) l2 " +
               fmt("%.3g", e.measurement[0]);
  }
  return r;
}

Result ac12() {
  Result r;
  const Registry reg = builtin_registry();
  reset_factory_invocations();
  std::size_t queries = 0;
  const std::vector<Tag> tags{Tag::Continuous, Tag::Count, Tag::Multiclass, Tag::OrderedFactor,
                              Tag::Textual};
  for (Tag f1 : tags) {
    for (Tag f2 : tags) {
      std::vector<std::optional<Tag>> targets{std::nullopt};
      targets.insert(targets.end(), tags.begin(), tags.end());
      for (const auto& t : targets) {
        const std::vector<SciType> features{{f1, false}, {f2, false}};
        const std::optional<SciType> target =
            t ? std::optional<SciType>(SciType{*t, false}) : std::nullopt;
        std::vector<std::string> got;
        for (const auto& md : reg.matching(features, target)) got.push_back(md.name);
        // Oracle straight from the model types' declarations.
        std::vector<std::string> expected;
        for (const auto& type : zoo_types()) {
          if (type->is_supervised() != t.has_value()) continue;
          auto accepts = [&](Tag c) {
            const auto in = type->input_scitypes();
            return std::any_of(in.begin(), in.end(), [&](Tag g) { return subsumes(g, c); });
          };
          if (!accepts(f1) || !accepts(f2)) continue;
          if (t && type->target_scitype() && !subsumes(*type->target_scitype(), *t)) continue;
          expected.push_back(type->name());
        }
        std::sort(expected.begin(), expected.end());
        r.require(got == expected, "query mismatch");
        ++queries;
      }
    }
  }
  const Table data = read_csv(fixture("regression.csv"));
  const auto [X, y] = split_target(data, "y");
  std::vector<std::string> regressors;
  for (const auto& md : reg.matching(schema(X), scitype_of(y))) regressors.push_back(md.name);
  r.require(regressors == std::vector<std::string>{"ConstantRegressor", "DecisionTreeRegressor",
                                                   "EnsembleRegressor", "RidgeRegressor"},
            "regression query wrong");
  r.require(factory_invocations() == 0,
            std::to_string(factory_invocations()) + " instantiations during matching");
  const std::string text = serialize_registry(reg);
  r.require(parse_registry(text) == reg && serialize_registry(parse_registry(text)) == text,
            "round trip not identity");
  r.require(read_file(std::string(MODELKIT_DATA) + "/registry.txt") == text,
            "bundled registry file differs");
  if (r.pass) {
    r.detail = std::to_string(queries + 1) + " queries, 0 instantiations, round trip identity";
  }
  return r;
}

Result ac13() {
  Result r;
  struct Case {
    std::string name;
    std::vector<std::string> args;
  };
  const std::vector<Case> golden{
      {"schema_regression", {"schema", fixture("regression.csv")}},
      {"schema_mixed", {"schema", fixture("mixed.csv")}},
      {"evaluate_regression", {"evaluate", fixture("evaluate_regression.json")}},
      {"evaluate_classification", {"evaluate", fixture("evaluate_classification.json")}},
      {"tune_ensemble", {"tune", fixture("tune_ensemble.json")}},
      {"tune_ridge_grid", {"tune", fixture("tune_ridge_grid.json")}},
      {"models", {"models"}},
      {"models_regression", {"models", "--matching", fixture("regression.csv"), "--target", "y"}},
      {"models_classification",
       {"models", "--matching", fixture("classification.csv"), "--target", "species"}},
  };
  auto run = [](const std::vector<std::string>& args, std::string* text) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    if (text) *text = out.str();
    return code;
  };
  for (const auto& c : golden) {
    std::string a, b;
    const int ca = run(c.args, &a);
    const int cb = run(c.args, &b);
    r.require(ca == 0 && cb == 0, c.name + " exit " + std::to_string(ca));
    r.require(a == b, c.name + " differs across runs");
    r.require(a == read_file(std::string(MODELKIT_GOLDEN) + "/" + c.name + ".txt"),
              c.name + " differs from golden");
  }
  const std::vector<std::pair<std::vector<std::string>, int>> codes{
      {{"evaluate", fixture("bad_unknown_measure.json")}, kExitConfig},
      {{"evaluate", fixture("bad_missing_target.json")}, kExitConfig},
      {{"tune", fixture("bad_range_path.json")}, kExitConfig},
      {{"evaluate", fixture("bad_param_type.json")}, kExitConfig},
      {{"evaluate", fixture("bad_data_file.json")}, kExitData},
      {{"schema", fixture("ragged.csv")}, kExitData},
      {{"schema", fixture("no_such.csv")}, kExitData},
  };
  for (const auto& [args, want] : codes) {
    const int got = run(args, nullptr);
    r.require(got == want, args[0] + " " + args[1] + " exited " + std::to_string(got));
  }
  std::string table;
  run({"evaluate", fixture("evaluate_regression.json")}, &table);
  const auto nl = table.find('\n');
  const std::string header = table.substr(nl + 1, table.find('\n', nl + 1) - nl - 1);
  r.require(header.rfind("| measure ", 0) == 0 && header.find("| measurement |") != std::string::npos &&
                header.find("| per_fold ") != std::string::npos,
            "table header '" + header + "'");
  if (r.pass) {
    r.detail = std::to_string(golden.size()) + " goldens byte-identical, " +
               std::to_string(codes.size()) + " exit codes, table layout ok";
  }
  return r;
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    std::function<Result()> check;
    double limit_seconds;  // 0 means no runtime bound
  };
  const std::vector<Criterion> criteria{
      {"AC1", "smart retraining minimality", ac1, 1.0},
      {"AC2", "from-scratch equivalence", ac2, 30.0},
      {"AC3", "ensemble warm restart", ac3, 0},
      {"AC4", "ridge correctness", ac4, 0},
      {"AC5", "PCA correctness", ac5, 0},
      {"AC6", "Box-Cox", ac6, 0},
      {"AC7", "measures", ac7, 0},
      {"AC8", "resampling", ac8, 0},
      {"AC9", "tuning", ac9, 60.0},
      {"AC10", "probabilistic contract", ac10, 0},
      {"AC11", "composite export", ac11, 0},
      {"AC12", "registry", ac12, 0},
      {"AC13", "CLI golden tests", ac13, 0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result res;
    try {
      res = c.check();
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs >= c.limit_seconds) {
      res.pass = false;
      res.detail += "; runtime " + fmt("%.2f", secs) + " s exceeds " + fmt("%.0f", c.limit_seconds) + " s";
    }
    if (!res.pass) ++failures;
    std::printf("[%s] %s %s: %s (%.2f s)\n", res.pass ? "PASS" : "FAIL", c.id, c.title,
                res.detail.c_str(), secs);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
