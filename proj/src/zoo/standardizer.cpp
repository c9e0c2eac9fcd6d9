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

#include "modelkit/zoo.hpp"
#include "zoo_internal.hpp"

namespace modelkit::zoo_detail {

namespace {

class StandardizerType final : public ZooType {
 public:
  StandardizerType()
      : ZooType("Standardizer", PredictionKind::Transformer,
                {Tag::Infinite, Tag::Finite}, std::nullopt) {}

  Params default_params() const override { return {}; }

  bool supports(Operation op) const override {
    return op == Operation::Transform || op == Operation::InverseTransform;
  }

  FitOutput fit(const Model&, const Data& X, const Column*) const override {
    const Table& t = as_table(X);
    auto fr = std::make_shared<StandardizerFit>();
    for (std::size_t j = 0; j < t.ncols(); ++j) {
      const Column& c = t.column(j);
      if (c.kind() != StorageKind::Float) continue;
      const auto& v = c.float_values();
      double mean = 0.0;
      for (double x : v) mean += x;
      mean /= static_cast<double>(std::max<std::size_t>(v.size(), 1));
      double ss = 0.0;
      for (double x : v) ss += (x - mean) * (x - mean);
      const double sd =
          v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
      fr->columns.push_back(t.names()[j]);
      fr->means.push_back(mean);
      fr->stds.push_back(sd);
    }
    return {fr, nullptr, nullptr};
  }

  Data transform(const Model&, const FitResult& fitresult,
                 const Data& X) const override {
    return rescale(fitresult, as_table(X), false);
  }

  Data inverse_transform(const Model&, const FitResult& fitresult,
                         const Data& X) const override {
    return rescale(fitresult, as_table(X), true);
  }

 private:
  static Table rescale(const FitResult& fitresult, const Table& t,
                       bool inverse) {
    const auto& fr = state_as<StandardizerFit>(fitresult, "Standardizer fit");
    Table out = t;
    for (std::size_t k = 0; k < fr.columns.size(); ++k) {
      const double sd = fr.stds[k];
      if (sd == 0.0) continue;
      std::vector<double> v = t.column(fr.columns[k]).as_doubles();
      for (double& x : v) {
        x = inverse ? x * sd + fr.means[k] : (x - fr.means[k]) / sd;
      }
      out = out.with_column(fr.columns[k], Column::floats(std::move(v)));
    }
    return out;
  }
};

}  // namespace

std::shared_ptr<const ModelType> standardizer_type() {
  static const auto type = std::make_shared<const StandardizerType>();
  return type;
}

}  // namespace modelkit::zoo_detail
