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

#include "modelkit/evaluation.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>

#include "internal/parallel.hpp"
#include "modelkit/error.hpp"
#include "modelkit/rng.hpp"

namespace modelkit {

void validate(const Resampling& resampling) {
  if (const auto* h = std::get_if<Holdout>(&resampling)) {
    if (!(h->fraction > 0.0 && h->fraction < 1.0)) {
      fail(ErrorCode::InvalidArgument, "holdout fraction must lie in (0, 1)");
    }
  } else if (std::get<CV>(resampling).nfolds < 2) {
    fail(ErrorCode::InvalidArgument, "CV needs nfolds >= 2");
  }
}

Resampling with_seed(Resampling resampling, std::uint64_t seed) {
  std::visit([&](auto& r) { r.seed = seed; }, resampling);
  return resampling;
}

std::string describe(const Resampling& resampling) {
  char buf[96];
  if (const auto* h = std::get_if<Holdout>(&resampling)) {
    std::snprintf(buf, sizeof buf, "Holdout(fraction=%.17g, shuffle=%s)",
                  h->fraction, h->shuffle ? "true" : "false");
  } else {
    const auto& cv = std::get<CV>(resampling);
    std::snprintf(buf, sizeof buf, "CV(nfolds=%zu, shuffle=%s)", cv.nfolds,
                  cv.shuffle ? "true" : "false");
  }
  return buf;
}

namespace {

std::vector<std::size_t> order(std::size_t n, bool shuffle, std::uint64_t seed) {
  if (shuffle) return Rng(seed).permutation(n);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

TrainTestPair split(const std::vector<std::size_t>& idx, std::size_t begin,
                    std::size_t end) {
  TrainTestPair p;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    (i >= begin && i < end ? p.test : p.train).push_back(idx[i]);
  }
  return p;
}

}  // namespace

std::vector<TrainTestPair> train_test_pairs(const Resampling& resampling,
                                            std::size_t nrows) {
  validate(resampling);
  if (const auto* h = std::get_if<Holdout>(&resampling)) {
    if (nrows < 2) {
      fail(ErrorCode::TooFewRows, "holdout needs at least 2 rows, got " +
                                      std::to_string(nrows));
    }
    auto ntest = static_cast<std::size_t>(
        std::ceil(h->fraction * static_cast<double>(nrows)));
    ntest = std::min(ntest, nrows - 1);
    return {split(order(nrows, h->shuffle, h->seed), nrows - ntest, nrows)};
  }
  const auto& cv = std::get<CV>(resampling);
  if (nrows < cv.nfolds) {
    fail(ErrorCode::TooFewRows, "CV with " + std::to_string(cv.nfolds) +
                                    " folds needs at least as many rows, got " +
                                    std::to_string(nrows));
  }
  const std::vector<std::size_t> idx = order(nrows, cv.shuffle, cv.seed);
  const std::size_t base = nrows / cv.nfolds;
  const std::size_t extra = nrows % cv.nfolds;
  std::vector<TrainTestPair> out;
  std::size_t begin = 0;
  for (std::size_t k = 0; k < cv.nfolds; ++k) {
    const std::size_t size = base + (k < extra ? 1 : 0);
    out.push_back(split(idx, begin, begin + size));
    begin += size;
  }
  return out;
}

namespace {

enum class View { Raw, Mode, Mean };

View view_for(const Measure& measure, const Model& model, const Column& y) {
  const PredictionKind kind = model.type().prediction_kind();
  if (measure.info.prediction_kind == PredictionKind::Probabilistic) {
    if (kind != PredictionKind::Probabilistic) {
      fail(ErrorCode::MeasureModelMismatch,
           measure.info.name + " needs probabilistic predictions but " +
               model.kind() + " is " + std::string(to_string(kind)));
    }
    return View::Raw;
  }
  if (kind == PredictionKind::Probabilistic) {
    return subsumes(Tag::Finite, scitype_of(y).tag) ? View::Mode : View::Mean;
  }
  return View::Raw;
}

}  // namespace

PerformanceEvaluation evaluate(const Model& model, const Data& X, const Column& y,
                               const Resampling& resampling,
                               const std::vector<std::string>& measures,
                               const EvaluateOptions& options) {
  std::vector<Measure> ms;
  for (const auto& name : measures) ms.push_back(find_measure(name));
  return evaluate(model, X, y, resampling, ms, options);
}

PerformanceEvaluation evaluate(const Model& model, const Data& X, const Column& y,
                               const Resampling& resampling,
                               std::span<const Measure> measures,
                               const EvaluateOptions& options) {
  if (!model.type().is_supervised()) {
    fail(ErrorCode::InvalidArgument,
         "evaluate needs a supervised model, got " + model.kind());
  }
  if (measures.empty()) fail(ErrorCode::InvalidArgument, "no measures given");
  if (nrows(X) != y.size()) {
    fail(ErrorCode::LengthMismatch, "features and target differ in length");
  }
  const SciType yt = scitype_of(y);
  std::vector<View> views;
  for (const auto& m : measures) {
    views.push_back(view_for(m, model, y));
    if (!subsumes(m.info.target_scitype, yt.tag)) {
      fail(ErrorCode::ScitypeMismatch,
           m.info.name + " needs a " + std::string(to_string(m.info.target_scitype)) +
               " target, got " + std::string(to_string(yt.tag)));
    }
  }

  PerformanceEvaluation out;
  for (const auto& m : measures) out.measures.push_back(m.info.name);
  out.pairs = train_test_pairs(resampling, y.size());
  const std::size_t nfolds = out.pairs.size();
  out.per_fold.assign(measures.size(), std::vector<double>(nfolds, 0.0));

  detail::parallel_for(nfolds, options.threads, [&](std::size_t k) {
    const TrainTestPair& pair = out.pairs[k];
    const Model copy = model;
    const FitOutput fo =
        fit(copy, select_rows(X, pair.train), y.select(pair.train));
    const Data Xtest = select_rows(X, pair.test);
    const Column ytest = y.select(pair.test);
    Data raw = predict(copy, fo.fitresult, Xtest);
    std::optional<Data> derived;
    for (std::size_t j = 0; j < measures.size(); ++j) {
      const Data* preds = &raw;
      if (views[j] != View::Raw) {
        if (!derived) derived = views[j] == View::Mode ? mode_of(raw) : mean_of(raw);
        preds = &*derived;
      }
      out.per_fold[j][k] = measures[j].apply(*preds, ytest);
    }
  });

  for (const auto& folds : out.per_fold) {
    double total = 0.0;
    for (double v : folds) total += v;
    out.measurement.push_back(total / static_cast<double>(folds.size()));
  }
  return out;
}

std::string format_3g(double value) {
  if (value == 0.0) value = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", value);
  return buf;
}

std::string render_table(const PerformanceEvaluation& evaluation) {
  std::vector<std::array<std::string, 3>> rows;
  rows.push_back({"measure", "measurement", "per_fold"});
  for (std::size_t j = 0; j < evaluation.measures.size(); ++j) {
    std::string folds = "[";
    for (std::size_t k = 0; k < evaluation.per_fold[j].size(); ++k) {
      if (k) folds += ", ";
      folds += format_3g(evaluation.per_fold[j][k]);
    }
    folds += "]";
    rows.push_back({evaluation.measures[j], format_3g(evaluation.measurement[j]),
                    std::move(folds)});
  }
  std::array<std::size_t, 3> width{};
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < 3; ++c) width[c] = std::max(width[c], r[c].size());
  }
  const std::size_t total = width[0] + width[1] + width[2] + 10;
  const std::string rule(total, '-');
  auto line = [&](const std::array<std::string, 3>& r) {
    std::string s = "|";
    for (std::size_t c = 0; c < 3; ++c) {
      s += " " + r[c] + std::string(width[c] - r[c].size(), ' ') + " |";
    }
    return s + "\n";
  };
  std::string out = rule + "\n" + line(rows[0]) + "|";
  for (std::size_t c = 0; c < 3; ++c) out += std::string(width[c] + 2, '-') + "|";
  out += "\n";
  for (std::size_t i = 1; i < rows.size(); ++i) out += line(rows[i]);
  return out + rule + "\n";
}

}  // namespace modelkit
