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

#include "modelkit/rng.hpp"
#include "modelkit/zoo.hpp"
#include "zoo_internal.hpp"

namespace modelkit {

std::vector<std::size_t> bagging_rows(std::uint64_t seed, std::size_t index,
                                      std::size_t nrows, double fraction) {
  const auto k = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(fraction * static_cast<double>(nrows))));
  Rng rng = Rng::derive(seed, index);
  return rng.sample_without_replacement(nrows, k);
}

namespace zoo_detail {

namespace {

// Atom i gets seed atom.seed + i when the atom has a seed, so randomized
// atoms (feature subsampling) differ across the ensemble.
Model atom_for(const Model& atom, std::size_t i) {
  if (!atom.has("seed")) return atom;
  const ParamValue& seed = atom.get("seed");
  if (seed.kind() != ParamValue::Kind::Integer) return atom;
  return set_param(atom, "seed",
                   seed.as_integer() + static_cast<std::int64_t>(i));
}

class EnsembleType final : public ZooType {
 public:
  EnsembleType()
      : ZooType("EnsembleRegressor", PredictionKind::Deterministic,
                {Tag::Continuous}, Tag::Continuous) {}

  Params default_params() const override {
    return {{"atom", tree_type()->make()},
            {"n", 10},
            {"bagging_fraction", 0.8},
            {"seed", 0}};
  }

  FitOutput fit(const Model& model, const Data& X,
                const Column* y) const override {
    validate(model);
    auto fr = std::make_shared<EnsembleFit>();
    auto cache = std::make_shared<EnsembleCache>(model);
    grow(model, as_table(X), *y, *fr, *cache);
    auto report = std::make_shared<EnsembleReport>();
    report->atoms_trained = fr->atoms.size();
    return {fr, cache, report};
  }

  FitOutput update(const Model& model, const FitOutput& previous,
                   const Data& X, const Column* y) const override {
    const auto* old_cache = state_if<EnsembleCache>(previous.cache);
    const auto* old_fit = state_if<EnsembleFit>(previous.fitresult);
    if (!old_cache || !old_fit) return fit(model, X, y);
    validate(model);
    const std::int64_t old_n = old_cache->model.integer("n");
    const std::int64_t new_n = model.integer("n");
    // Warm restart only when "n" alone changed, and grew.
    if (new_n <= old_n || set_param(model, "n", old_n) != old_cache->model) {
      return fit(model, X, y);
    }
    auto fr = std::make_shared<EnsembleFit>(*old_fit);
    auto cache = std::make_shared<EnsembleCache>(*old_cache);
    cache->model = model;
    const std::size_t before = fr->atoms.size();
    grow(model, as_table(X), *y, *fr, *cache);
    auto report = std::make_shared<EnsembleReport>();
    report->atoms_trained = fr->atoms.size() - before;
    report->warm_restart = true;
    return {fr, cache, report};
  }

  Data predict(const Model& model, const FitResult& fitresult,
               const Data& X) const override {
    const auto& fr = state_as<EnsembleFit>(fitresult, "ensemble fit");
    const Model& atom = model.submodel("atom");
    const Operation op = atom.type().prediction_kind() ==
                                 PredictionKind::Probabilistic
                             ? Operation::PredictMean
                             : Operation::Predict;
    std::vector<double> total(nrows(X), 0.0);
    for (std::size_t i = 0; i < fr.atoms.size(); ++i) {
      const std::vector<double> p =
          as_column(apply(op, atom_for(atom, i), fr.atoms[i], X)).as_doubles();
      for (std::size_t r = 0; r < total.size(); ++r) total[r] += p[r];
    }
    for (double& v : total) v /= static_cast<double>(fr.atoms.size());
    return Column::floats(std::move(total));
  }

 private:
  static void validate(const Model& model) {
    if (model.integer("n") < 1) {
      fail(ErrorCode::InvalidValue, "EnsembleRegressor: n must be >= 1");
    }
    const double fraction = model.real("bagging_fraction");
    if (!(fraction > 0.0 && fraction <= 1.0)) {
      fail(ErrorCode::InvalidValue,
           "EnsembleRegressor: bagging_fraction must lie in (0, 1]");
    }
    const Model& atom = model.submodel("atom");
    if (!atom.type().is_supervised() ||
        atom.type().prediction_kind() == PredictionKind::Transformer) {
      fail(ErrorCode::InvalidValue,
           "EnsembleRegressor: atom must be a supervised regressor");
    }
  }

  static void grow(const Model& model, const Table& X, const Column& y,
                   EnsembleFit& fr, EnsembleCache& cache) {
    const Model& atom = model.submodel("atom");
    const auto n = static_cast<std::size_t>(model.integer("n"));
    const auto seed = static_cast<std::uint64_t>(model.integer("seed"));
    const double fraction = model.real("bagging_fraction");
    for (std::size_t i = fr.atoms.size(); i < n; ++i) {
      std::vector<std::size_t> rows = bagging_rows(seed, i, X.nrows(), fraction);
      const Table Xi = X.select_rows(rows);
      const Column yi = y.select(rows);
      fr.atoms.push_back(modelkit::fit(atom_for(atom, i), Xi, yi).fitresult);
      cache.atom_rows.push_back(std::move(rows));
    }
  }
};

}  // namespace

std::shared_ptr<const ModelType> ensemble_type() {
  static const auto type = std::make_shared<const EnsembleType>();
  return type;
}

}  // namespace zoo_detail
}  // namespace modelkit
