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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "modelkit/column.hpp"
#include "modelkit/rng.hpp"

namespace modelkit {

/// Probability distribution over the complete pool of a categorical
/// variable. Classes never observed in training keep their slot (with
/// probability zero), so downstream code always sees every class.
class UnivariateFinite {
 public:
  /// Probabilities must be non-negative and sum to 1 within 1e-6; they are
  /// then divided by their sum.
  UnivariateFinite(Pool pool, std::vector<double> probs, bool ordered = false);
  UnivariateFinite(std::vector<std::string> pool, std::vector<double> probs,
                   bool ordered = false);

  const Pool& pool() const { return pool_; }
  const std::vector<double>& probs() const { return probs_; }
  bool ordered() const { return ordered_; }
  std::size_t size() const { return probs_.size(); }

  double pdf(std::string_view label) const;
  double pdf_at(std::size_t index) const { return probs_.at(index); }

  /// Most probable class; ties go to the earliest pool position.
  const std::string& mode() const;
  std::size_t mode_index() const;

  std::vector<std::string> sample(Rng& rng, std::size_t n) const;
  std::size_t sample_index(Rng& rng) const;

  /// `UnivariateFinite(a=>0.2, b=>0.5)`, 4 significant digits.
  std::string to_string() const;

  friend bool operator==(const UnivariateFinite& a,
                         const UnivariateFinite& b);

 private:
  Pool pool_;
  std::vector<double> probs_;
  bool ordered_ = false;
};

class NormalDist {
 public:
  NormalDist(double mu, double sigma);

  double mu() const { return mu_; }
  double sigma() const { return sigma_; }

  double mean() const { return mu_; }
  double median() const { return mu_; }
  double mode() const { return mu_; }
  /// Gaussian density. A zero-sigma distribution is a point mass: the
  /// density is +inf at mu and 0 elsewhere.
  double pdf(double x) const;

  std::vector<double> sample(Rng& rng, std::size_t n) const;

  std::string to_string() const;

  friend bool operator==(const NormalDist&, const NormalDist&) = default;

 private:
  double mu_;
  double sigma_;
};

/// Frequency distribution of a categorical column over its full pool.
UnivariateFinite frequency_distribution(const Column& y,
                                        std::span<const std::size_t> rows);
UnivariateFinite frequency_distribution(const Column& y);

}  // namespace modelkit
