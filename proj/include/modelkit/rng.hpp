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
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace modelkit {

/// Seeded pseudo-random generator used everywhere randomness is needed.
///
/// The algorithm is fixed repo-wide so golden outputs are bit-stable across
/// standard libraries: xoshiro256** for the stream, state expanded from the
/// 64-bit seed with SplitMix64. Uniform doubles take the top 53 bits; bounded
/// integers use rejection sampling; normals use the Marsaglia polar method.
/// None of the implementation-defined <random> distributions are used.
///
/// `Rng::derive(seed, stream)` gives independent child streams keyed by an
/// integer (fold index, candidate index, ensemble atom index), so parallel
/// work can draw from per-task generators while staying schedule-independent.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0);

  static Rng derive(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return next(); }
  std::uint64_t next();

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on [lower, upper].
  double uniform(double lower, double upper);
  /// Uniform integer on [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform integer on [lower, upper] inclusive.
  std::int64_t integer(std::int64_t lower, std::int64_t upper);
  double standard_normal();

  /// Fisher-Yates permutation of 0..n-1.
  std::vector<std::size_t> permutation(std::size_t n);
  /// k distinct indices from 0..n-1, returned in ascending order.
  std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                      std::size_t k);

 private:
  std::uint64_t s_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace modelkit
