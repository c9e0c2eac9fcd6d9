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

#include "modelkit/measures.hpp"

#include <algorithm>
#include <cmath>

#include "modelkit/error.hpp"

namespace modelkit {

namespace {

void check_lengths(std::size_t predictions, std::size_t truth) {
  if (predictions == 0) {
    fail(ErrorCode::EmptyPredictions, "no predictions to measure");
  }
  if (predictions != truth) {
    fail(ErrorCode::LengthMismatch,
         std::to_string(predictions) + " predictions for " +
             std::to_string(truth) + " observations");
  }
}

std::vector<double> numeric_truth(const Column& truth) {
  if (truth.kind() != StorageKind::Float &&
      truth.kind() != StorageKind::Integer) {
    fail(ErrorCode::ScitypeMismatch,
         "measure needs a numeric target, got " +
             to_string(scitype_of(truth)));
  }
  return truth.as_doubles();
}

template <class PerObservation>
double mean_over_distributions(const Data& predictions, const Column& truth,
                               PerObservation f) {
  const auto& ds = as_finite(predictions);
  check_lengths(ds.size(), truth.size());
  double total = 0.0;
  for (std::size_t i = 0; i < ds.size(); ++i) total += f(ds[i], truth.label(i));
  return total / static_cast<double>(ds.size());
}

std::vector<Measure> make_builtins() {
  std::vector<Measure> out;
  out.push_back(
      {{"l2", Orientation::Loss, PredictionKind::Deterministic, Tag::Infinite},
       [](const Data& predictions, const Column& truth) {
         const std::vector<double> yhat = as_column(predictions).as_doubles();
         const std::vector<double> y = numeric_truth(truth);
         check_lengths(yhat.size(), y.size());
         double total = 0.0;
         for (std::size_t i = 0; i < y.size(); ++i) total += l2(yhat[i], y[i]);
         return total / static_cast<double>(y.size());
       }});
  out.push_back(
      {{"rms", Orientation::Loss, PredictionKind::Deterministic, Tag::Infinite},
       [](const Data& predictions, const Column& truth) {
         const std::vector<double> yhat = as_column(predictions).as_doubles();
         const std::vector<double> y = numeric_truth(truth);
         return rms(yhat, y);
       }});
  out.push_back({{"brier_score", Orientation::Score,
                  PredictionKind::Probabilistic, Tag::Finite},
                 [](const Data& predictions, const Column& truth) {
                   return mean_over_distributions(predictions, truth,
                                                  brier_score);
                 }});
  out.push_back({{"cross_entropy", Orientation::Loss,
                  PredictionKind::Probabilistic, Tag::Finite},
                 [](const Data& predictions, const Column& truth) {
                   return mean_over_distributions(predictions, truth,
                                                  cross_entropy);
                 }});
  out.push_back({{"l2_hinge", Orientation::Loss, PredictionKind::Probabilistic,
                  Tag::Finite},
                 [](const Data& predictions, const Column& truth) {
                   return mean_over_distributions(predictions, truth, l2_hinge);
                 }});
  out.push_back({{"misclassification_rate", Orientation::Loss,
                  PredictionKind::Deterministic, Tag::Finite},
                 [](const Data& predictions, const Column& truth) {
                   const auto yhat = as_column(predictions).labels();
                   const auto y = truth.labels();
                   return misclassification_rate(yhat, y);
                 }});
  return out;
}

}  // namespace

std::string_view to_string(Orientation orientation) {
  return orientation == Orientation::Loss ? "loss" : "score";
}

const std::vector<Measure>& builtin_measures() {
  static const std::vector<Measure> measures = make_builtins();
  return measures;
}

const Measure& find_measure(std::string_view name) {
  for (const auto& m : builtin_measures()) {
    if (m.info.name == name) return m;
  }
  fail(ErrorCode::UnknownMeasure, "unknown measure: " + std::string(name));
}

bool is_better(Orientation orientation, double candidate, double incumbent) {
  return orientation == Orientation::Loss ? candidate < incumbent
                                          : candidate > incumbent;
}

double l2(double prediction, double truth) {
  const double e = prediction - truth;
  return e * e;
}

double rms(std::span<const double> predictions, std::span<const double> truth) {
  check_lengths(predictions.size(), truth.size());
  double total = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    total += l2(predictions[i], truth[i]);
  }
  return std::sqrt(total / static_cast<double>(truth.size()));
}

double brier_score(const UnivariateFinite& d, std::string_view truth) {
  const auto k_truth = pool_index(d.pool(), truth);
  if (!k_truth) {
    fail(ErrorCode::ClassNotInPool,
         "class '" + std::string(truth) + "' is not in the pool");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double e = d.pdf_at(k) - (k == *k_truth ? 1.0 : 0.0);
    total += e * e;
  }
  return -total;
}

double cross_entropy(const UnivariateFinite& d, std::string_view truth) {
  return -std::log(std::max(d.pdf(truth), kCrossEntropyClamp));
}

double l2_hinge(const UnivariateFinite& d, std::string_view truth) {
  if (d.size() != 2) {
    fail(ErrorCode::NotBinary, "l2_hinge needs a two-class pool, got " +
                                   std::to_string(d.size()) + " classes");
  }
  const auto k_truth = pool_index(d.pool(), truth);
  if (!k_truth) {
    fail(ErrorCode::ClassNotInPool,
         "class '" + std::string(truth) + "' is not in the pool");
  }
  const double p = d.pdf_at(1);
  const double s = *k_truth == 1 ? 1.0 : -1.0;
  const double agreement = (2.0 * p - 1.0) * s;
  const double h = std::max(0.0, 1.0 - agreement);
  return h * h;
}

double misclassification_rate(std::span<const std::string> predictions,
                              std::span<const std::string> truth) {
  check_lengths(predictions.size(), truth.size());
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predictions[i] != truth[i]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(truth.size());
}

}  // namespace modelkit
