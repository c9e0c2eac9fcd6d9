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

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace modelkit {

// Concrete tags come first; the abstract ones exist only so subsumption
// queries ("is this column Finite?") have something to ask about.
//
//   Scientific
//   ├── Known
//   │   ├── Infinite ── Continuous, Count
//   │   ├── Finite ──── Multiclass, OrderedFactor
//   │   └── Textual
//   └── Unknown
enum class Tag {
  Continuous,
  Count,
  Multiclass,
  OrderedFactor,
  Textual,
  Unknown,
  Infinite,
  Finite,
  Known,
  Scientific,
};

inline constexpr std::array<Tag, 6> kConcreteTags = {
    Tag::Continuous, Tag::Count,   Tag::Multiclass,
    Tag::OrderedFactor, Tag::Textual, Tag::Unknown};

inline constexpr std::array<Tag, 10> kAllTags = {
    Tag::Continuous, Tag::Count,    Tag::Multiclass, Tag::OrderedFactor,
    Tag::Textual,    Tag::Unknown,  Tag::Infinite,   Tag::Finite,
    Tag::Known,      Tag::Scientific};

bool is_concrete(Tag tag);
std::optional<Tag> parent(Tag tag);

/// True iff `specific` is `general` or one of its descendants.
bool subsumes(Tag general, Tag specific);

std::string_view to_string(Tag tag);
std::optional<Tag> parse_tag(std::string_view name);

struct SciType {
  Tag tag = Tag::Unknown;
  bool nullable = false;

  friend bool operator==(const SciType&, const SciType&) = default;
};

inline bool subsumes(Tag general, const SciType& specific) {
  return subsumes(general, specific.tag);
}

/// "Continuous", or "Union{Missing, Continuous}" for nullable columns.
std::string to_string(const SciType& type);

}  // namespace modelkit
