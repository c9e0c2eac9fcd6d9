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

#include "modelkit/distributions.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>

#include "modelkit/error.hpp"

namespace modelkit {

namespace {

std::string sig4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

UnivariateFinite::UnivariateFinite(Pool pool, std::vector<double> probs,
                                   bool ordered)
    : pool_(std::move(pool)), probs_(std::move(probs)), ordered_(ordered) {
  if (!pool_) pool_ = make_pool({});
  if (pool_->size() != probs_.size()) {
    fail(ErrorCode::LengthMismatch,
         "pool has " + std::to_string(pool_->size()) + " classes but " +
             std::to_string(probs_.size()) + " probabilities given");
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0)) {
      fail(ErrorCode::NegativeProbability,
           "probability " + sig4(p) + " is negative or NaN");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    fail(ErrorCode::NotNormalized,
         "probabilities sum to " + std::to_string(sum) + ", not 1");
  }
  for (double& p : probs_) p /= sum;
}

UnivariateFinite::UnivariateFinite(std::vector<std::string> pool,
                                   std::vector<double> probs, bool ordered)
    : UnivariateFinite(make_pool(std::move(pool)), std::move(probs), ordered) {}

double UnivariateFinite::pdf(std::string_view label) const {
  auto k = pool_index(pool_, label);
  if (!k) {
    fail(ErrorCode::ClassNotInPool,
         "class '" + std::string(label) + "' is not in the pool");
  }
  return probs_[*k];
}

std::size_t UnivariateFinite::mode_index() const {
  std::size_t best = 0;
  for (std::size_t k = 1; k < probs_.size(); ++k) {
    if (probs_[k] > probs_[best]) best = k;
  }
  return best;
}

const std::string& UnivariateFinite::mode() const {
  if (probs_.empty()) {
    fail(ErrorCode::InvalidArgument, "mode of an empty distribution");
  }
  return (*pool_)[mode_index()];
}

std::size_t UnivariateFinite::sample_index(Rng& rng) const {
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < probs_.size(); ++k) {
    if (probs_[k] <= 0.0) continue;
    cumulative += probs_[k];
    last_positive = k;
    if (u < cumulative) return k;
  }
  // Rounding can leave the cumulative sum a hair below 1.
  return last_positive;
}

std::vector<std::string> UnivariateFinite::sample(Rng& rng,
                                                  std::size_t n) const {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back((*pool_)[sample_index(rng)]);
  return out;
}

std::string UnivariateFinite::to_string() const {
  std::string out = "UnivariateFinite(";
  for (std::size_t k = 0; k < probs_.size(); ++k) {
    if (k > 0) out += ", ";
    out += (*pool_)[k] + "=>" + sig4(probs_[k]);
  }
  return out + ")";
}

bool operator==(const UnivariateFinite& a, const UnivariateFinite& b) {
  return a.ordered_ == b.ordered_ && *a.pool_ == *b.pool_ && a.probs_ == b.probs_;
}

NormalDist::NormalDist(double mu, double sigma) : mu_(mu), sigma_(sigma) {
  if (std::isnan(sigma) || sigma < 0.0) {
    fail(ErrorCode::InvalidValue, "standard deviation must be non-negative");
  }
}

double NormalDist::pdf(double x) const {
  if (sigma_ == 0.0) {
    return x == mu_ ? std::numeric_limits<double>::infinity() : 0.0;
  }
  const double z = (x - mu_) / sigma_;
  return std::exp(-0.5 * z * z) / (sigma_ * std::sqrt(2.0 * std::numbers::pi));
}

std::vector<double> NormalDist::sample(Rng& rng, std::size_t n) const {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(mu_ + sigma_ * rng.standard_normal());
  }
  return out;
}

std::string NormalDist::to_string() const {
  return "Normal(mu=" + sig4(mu_) + ", sigma=" + sig4(sigma_) + ")";
}

UnivariateFinite frequency_distribution(const Column& y,
                                        std::span<const std::size_t> rows) {
  const auto& cat = y.categorical();
  std::vector<double> counts(cat.pool->size(), 0.0);
  double total = 0.0;
  for (std::size_t r : rows) {
    if (y.is_missing(r)) continue;
    counts[cat.codes[r]] += 1.0;
    total += 1.0;
  }
  if (total == 0.0) {
    fail(ErrorCode::DegenerateData, "no observed classes to count");
  }
  for (double& c : counts) c /= total;
  return UnivariateFinite(cat.pool, std::move(counts), cat.ordered);
}

UnivariateFinite frequency_distribution(const Column& y) {
  std::vector<std::size_t> rows(y.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return frequency_distribution(y, rows);
}

}  // namespace modelkit
