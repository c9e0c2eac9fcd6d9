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

#include "modelkit/linalg.hpp"
#include "modelkit/zoo.hpp"
#include "zoo_internal.hpp"

namespace modelkit::zoo_detail {

namespace {

class PcaType final : public ZooType {
 public:
  PcaType()
      : ZooType("PCA", PredictionKind::Transformer, {Tag::Continuous},
                std::nullopt) {}

  Params default_params() const override { return {{"maxoutdim", 0}}; }

  bool supports(Operation op) const override {
    return op == Operation::Transform || op == Operation::InverseTransform;
  }

  FitOutput fit(const Model& model, const Data& X,
                const Column*) const override {
    const Table& t = as_table(X);
    const std::int64_t maxoutdim = model.integer("maxoutdim");
    if (maxoutdim < 0) {
      fail(ErrorCode::InvalidValue, "PCA: maxoutdim must be >= 0");
    }
    if (t.nrows() < 2) {
      fail(ErrorCode::DegenerateData, "PCA needs at least 2 rows");
    }
    if (t.ncols() == 0) {
      fail(ErrorCode::DegenerateData, "PCA needs at least one column");
    }
    const Eigen::MatrixXd A = numeric_matrix(t);
    const Eigen::VectorXd mean = A.colwise().mean().transpose();
    const Eigen::MatrixXd centered = A.rowwise() - mean.transpose();
    const Eigen::MatrixXd cov =
        (centered.transpose() * centered) / static_cast<double>(A.rows() - 1);

    const SymmetricEigen eig = jacobi_eigen(cov);
    const Eigen::Index p = cov.rows();
    const Eigen::Index k =
        maxoutdim == 0 ? p : std::min<Eigen::Index>(p, maxoutdim);

    auto fr = std::make_shared<PcaFit>();
    fr->input_names = t.names();
    fr->mean = mean;
    fr->projection = eig.vectors.leftCols(k);
    for (Eigen::Index c = 0; c < k; ++c) {
      // Sign convention: the largest-magnitude loading is positive.
      Eigen::Index arg = 0;
      for (Eigen::Index r = 1; r < p; ++r) {
        if (std::abs(fr->projection(r, c)) > std::abs(fr->projection(arg, c))) {
          arg = r;
        }
      }
      if (fr->projection(arg, c) < 0) fr->projection.col(c) *= -1.0;
    }

    auto report = std::make_shared<PcaReport>();
    double total = 0.0;
    for (Eigen::Index i = 0; i < p; ++i) total += std::max(eig.values(i), 0.0);
    for (Eigen::Index c = 0; c < k; ++c) {
      report->eigenvalues.push_back(eig.values(c));
      report->explained_variance_ratio.push_back(
          total > 0 ? std::max(eig.values(c), 0.0) / total : 0.0);
    }
    return {fr, nullptr, report};
  }

  Data transform(const Model&, const FitResult& fitresult,
                 const Data& X) const override {
    const auto& fr = state_as<PcaFit>(fitresult, "PCA fit");
    const Eigen::MatrixXd A = columns_matrix(as_table(X), fr.input_names);
    const Eigen::MatrixXd W = (A.rowwise() - fr.mean.transpose()) * fr.projection;
    std::vector<std::string> names;
    std::vector<Column> columns;
    for (Eigen::Index c = 0; c < W.cols(); ++c) {
      names.push_back("pc" + std::to_string(c + 1));
      columns.push_back(float_column(W.col(c)));
    }
    return Table(std::move(names), std::move(columns));
  }

  Data inverse_transform(const Model&, const FitResult& fitresult,
                         const Data& X) const override {
    const auto& fr = state_as<PcaFit>(fitresult, "PCA fit");
    const Table& w = as_table(X);
    std::vector<std::string> pcs;
    for (Eigen::Index c = 0; c < fr.projection.cols(); ++c) {
      pcs.push_back("pc" + std::to_string(c + 1));
    }
    const Eigen::MatrixXd W = columns_matrix(w, pcs);
    const Eigen::MatrixXd A =
        (W * fr.projection.transpose()).rowwise() + fr.mean.transpose();
    std::vector<Column> columns;
    for (Eigen::Index c = 0; c < A.cols(); ++c) {
      columns.push_back(float_column(A.col(c)));
    }
    return Table(fr.input_names, std::move(columns));
  }
};

}  // namespace

std::shared_ptr<const ModelType> pca_type() {
  static const auto type = std::make_shared<const PcaType>();
  return type;
}

}  // namespace modelkit::zoo_detail
