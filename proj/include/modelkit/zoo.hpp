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
#include <memory>
#include <string>
#include <string_view>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "modelkit/distributions.hpp"
#include "modelkit/model.hpp"

namespace modelkit {

// ---------------------------------------------------------------------------
// Constructors with the documented defaults.

Model standardizer();
Model box_cox();
Model pca(std::int64_t maxoutdim = 0);
Model ridge(double lambda = 1.0);
Model knn_classifier(std::int64_t K = 5);
Model constant_classifier();
Model constant_regressor();
Model tree_regressor(std::int64_t max_depth = -1,
                     std::int64_t min_samples_leaf = 1,
                     std::int64_t n_subfeatures = 0, std::int64_t seed = 0);
Model ensemble_regressor(const Model& atom, std::int64_t n = 10,
                         double bagging_fraction = 0.8, std::int64_t seed = 0);
Model ensemble_regressor();

/// Every zoo type, in registry order.
const std::vector<std::shared_ptr<const ModelType>>& zoo_types();
std::shared_ptr<const ModelType> find_zoo_type(std::string_view name);

// ---------------------------------------------------------------------------
// Learned parameters, exposed so callers can inspect what was learned.

struct StandardizerFit : State {
  std::vector<std::string> columns;  // Continuous columns that were fit
  std::vector<double> means;
  std::vector<double> stds;  // sample std; 0 means pass through
};

struct BoxCoxFit : State {
  double lambda = 1.0;
};

struct BoxCoxReport : State {
  std::vector<double> grid;
  std::vector<double> log_likelihood;
};

/// Gaussian profile log-likelihood of the Box-Cox transform at `lambda`,
/// up to an additive constant: −n/2·ln σ̂²(λ) + (λ − 1)·Σ ln xᵢ.
double box_cox_log_likelihood(std::span<const double> x, double lambda);
double box_cox_transform(double x, double lambda);
double box_cox_inverse(double z, double lambda);
/// The λ search grid: −4, −3.95, ..., 4.
std::vector<double> box_cox_grid();

struct PcaFit : State {
  std::vector<std::string> input_names;
  Eigen::VectorXd mean;
  Eigen::MatrixXd projection;  // p × k, orthonormal columns
};

struct PcaReport : State {
  std::vector<double> eigenvalues;
  std::vector<double> explained_variance_ratio;
};

struct RidgeFit : State {
  std::vector<std::string> input_names;
  Eigen::VectorXd coefficients;
  double intercept = 0.0;
};

struct KnnFit : State {
  std::vector<std::string> input_names;
  Eigen::MatrixXd X;
  Column y;  // categorical, full pool
  std::int64_t K = 5;
};

struct ConstantClassifierFit : State {
  explicit ConstantClassifierFit(UnivariateFinite d) : distribution(std::move(d)) {}
  UnivariateFinite distribution;
};

struct ConstantRegressorFit : State {
  explicit ConstantRegressorFit(NormalDist d) : distribution(d) {}
  NormalDist distribution;
};

struct TreeNode {
  // Internal nodes route x[feature] <= threshold to `left`.
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // leaf prediction (mean of its rows)
  std::size_t samples = 0;

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct TreeFit : State {
  std::vector<std::string> input_names;
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double predict_row(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  int depth() const;

  friend bool operator==(const TreeFit& a, const TreeFit& b) {
    return a.input_names == b.input_names && a.nodes == b.nodes;
  }
};

struct EnsembleFit : State {
  std::vector<FitResult> atoms;
};

struct EnsembleCache : State {
  explicit EnsembleCache(Model m) : model(std::move(m)) {}
  Model model;  // hyperparameters the atoms were trained with
  std::vector<std::vector<std::size_t>> atom_rows;
};

struct EnsembleReport : State {
  std::size_t atoms_trained = 0;  // by the call that produced this report
  bool warm_restart = false;
};

/// Rows atom `index` of an ensemble trains on: floor(fraction·N) (at least
/// one) distinct rows, ascending, drawn with Rng::derive(seed, index).
std::vector<std::size_t> bagging_rows(std::uint64_t seed, std::size_t index,
                                      std::size_t nrows, double fraction);

}  // namespace modelkit
