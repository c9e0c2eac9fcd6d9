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
#include "modelkit/rng.hpp"
#include "modelkit/zoo.hpp"
#include "zoo_internal.hpp"

namespace modelkit {

double TreeFit::predict_row(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  int k = 0;
  while (nodes[static_cast<std::size_t>(k)].feature >= 0) {
    const TreeNode& node = nodes[static_cast<std::size_t>(k)];
    k = x(node.feature) <= node.threshold ? node.left : node.right;
  }
  return nodes[static_cast<std::size_t>(k)].value;
}

int TreeFit::depth() const {
  std::vector<int> depth(nodes.size(), 0);
  int deepest = 0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    deepest = std::max(deepest, depth[k]);
    if (nodes[k].feature >= 0) {
      depth[static_cast<std::size_t>(nodes[k].left)] = depth[k] + 1;
      depth[static_cast<std::size_t>(nodes[k].right)] = depth[k] + 1;
    }
  }
  return deepest;
}

namespace zoo_detail {

namespace {

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const Eigen::MatrixXd& X, const std::vector<double>& y,
              std::int64_t max_depth, std::int64_t min_leaf,
              std::int64_t n_subfeatures, std::uint64_t seed)
      : X_(X),
        y_(y),
        max_depth_(max_depth),
        min_leaf_(static_cast<std::size_t>(std::max<std::int64_t>(min_leaf, 1))),
        n_sub_(n_subfeatures),
        rng_(seed) {}

  std::vector<TreeNode> build() {
    std::vector<std::size_t> rows(y_.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    grow(rows, 0);
    return std::move(nodes_);
  }

 private:
  int grow(const std::vector<std::size_t>& rows, std::int64_t depth) {
    const int index = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    double sum = 0.0;
    for (std::size_t r : rows) sum += y_[r];
    nodes_.back().value = sum / static_cast<double>(rows.size());
    nodes_.back().samples = rows.size();

    const bool depth_exhausted = max_depth_ >= 0 && depth >= max_depth_;
    if (depth_exhausted || rows.size() < 2 * min_leaf_ || constant(rows)) {
      return index;
    }
    const Split split = best_split(rows);
    if (split.feature < 0) return index;

    std::vector<std::size_t> left, right;
    for (std::size_t r : rows) {
      (X_(static_cast<Eigen::Index>(r), split.feature) <= split.threshold
           ? left
           : right)
          .push_back(r);
    }
    const int l = grow(left, depth + 1);
    const int rt = grow(right, depth + 1);
    TreeNode& node = nodes_[static_cast<std::size_t>(index)];
    node.feature = split.feature;
    node.threshold = split.threshold;
    node.left = l;
    node.right = rt;
    return index;
  }

  bool constant(const std::vector<std::size_t>& rows) const {
    for (std::size_t r : rows) {
      if (y_[r] != y_[rows.front()]) return false;
    }
    return true;
  }

  std::vector<std::size_t> candidate_features() {
    const auto p = static_cast<std::size_t>(X_.cols());
    if (n_sub_ <= 0 || static_cast<std::size_t>(n_sub_) >= p) {
      std::vector<std::size_t> all(p);
      std::iota(all.begin(), all.end(), std::size_t{0});
      return all;
    }
    return rng_.sample_without_replacement(p, static_cast<std::size_t>(n_sub_));
  }

  Split best_split(const std::vector<std::size_t>& rows) {
    const std::size_t n = rows.size();
    double total = 0.0;
    for (std::size_t r : rows) total += y_[r];
    const double parent = total * total / static_cast<double>(n);

    Split best;
    std::vector<std::size_t> sorted(rows);
    // Features ascend and thresholds ascend within a feature; only a strictly
    // larger gain replaces the incumbent, which fixes the tie-break order.
    for (std::size_t f : candidate_features()) {
      const auto fi = static_cast<Eigen::Index>(f);
      std::stable_sort(sorted.begin(), sorted.end(),
                       [&](std::size_t a, std::size_t b) {
                         return X_(static_cast<Eigen::Index>(a), fi) <
                                X_(static_cast<Eigen::Index>(b), fi);
                       });
      double left_sum = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        left_sum += y_[sorted[i]];
        const double lo = X_(static_cast<Eigen::Index>(sorted[i]), fi);
        const double hi = X_(static_cast<Eigen::Index>(sorted[i + 1]), fi);
        if (!(lo < hi)) continue;
        const std::size_t nl = i + 1;
        const std::size_t nr = n - nl;
        if (nl < min_leaf_ || nr < min_leaf_) continue;
        const double right_sum = total - left_sum;
        const double gain = left_sum * left_sum / static_cast<double>(nl) +
                            right_sum * right_sum / static_cast<double>(nr) -
                            parent;
        if (gain > best.gain) {
          double threshold = lo + (hi - lo) / 2.0;
          if (!(threshold < hi)) threshold = lo;
          best = {static_cast<int>(f), threshold, gain};
        }
      }
    }
    return best;
  }

  const Eigen::MatrixXd& X_;
  const std::vector<double>& y_;
  std::int64_t max_depth_;
  std::size_t min_leaf_;
  std::int64_t n_sub_;
  Rng rng_;
  std::vector<TreeNode> nodes_;
};

class TreeType final : public ZooType {
 public:
  TreeType()
      : ZooType("DecisionTreeRegressor", PredictionKind::Deterministic,
                {Tag::Continuous}, Tag::Continuous) {}

  Params default_params() const override {
    return {{"max_depth", -1},
            {"min_samples_leaf", 1},
            {"n_subfeatures", 0},
            {"seed", 0}};
  }

  FitOutput fit(const Model& model, const Data& X,
                const Column* y) const override {
    const Table& t = as_table(X);
    if (t.nrows() == 0) {
      fail(ErrorCode::DegenerateData, "DecisionTreeRegressor: no training rows");
    }
    if (model.integer("min_samples_leaf") < 1) {
      fail(ErrorCode::InvalidValue,
           "DecisionTreeRegressor: min_samples_leaf must be >= 1");
    }
    if (model.integer("n_subfeatures") < 0) {
      fail(ErrorCode::InvalidValue,
           "DecisionTreeRegressor: n_subfeatures must be >= 0");
    }
    const Eigen::MatrixXd A = numeric_matrix(t);
    const std::vector<double> yv = y->as_doubles();
    TreeBuilder builder(A, yv, model.integer("max_depth"),
                        model.integer("min_samples_leaf"),
                        model.integer("n_subfeatures"),
                        static_cast<std::uint64_t>(model.integer("seed")));
    auto fr = std::make_shared<TreeFit>();
    fr->input_names = t.names();
    fr->nodes = builder.build();
    return {fr, nullptr, nullptr};
  }

  Data predict(const Model&, const FitResult& fitresult,
               const Data& X) const override {
    const auto& fr = state_as<TreeFit>(fitresult, "tree fit");
    const Eigen::MatrixXd A = columns_matrix(as_table(X), fr.input_names);
    std::vector<double> out(static_cast<std::size_t>(A.rows()));
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      out[static_cast<std::size_t>(i)] = fr.predict_row(A.row(i).transpose());
    }
    return Column::floats(std::move(out));
  }
};

}  // namespace

std::shared_ptr<const ModelType> tree_type() {
  static const auto type = std::make_shared<const TreeType>();
  return type;
}

}  // namespace zoo_detail
}  // namespace modelkit
