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

#include "modelkit/scitype.hpp"

namespace modelkit {

bool is_concrete(Tag tag) {
  switch (tag) {
    case Tag::Continuous:
    case Tag::Count:
    case Tag::Multiclass:
    case Tag::OrderedFactor:
    case Tag::Textual:
    case Tag::Unknown:
      return true;
    default:
      return false;
  }
}

std::optional<Tag> parent(Tag tag) {
  switch (tag) {
    case Tag::Continuous:
    case Tag::Count:
      return Tag::Infinite;
    case Tag::Multiclass:
    case Tag::OrderedFactor:
      return Tag::Finite;
    case Tag::Infinite:
    case Tag::Finite:
    case Tag::Textual:
      return Tag::Known;
    case Tag::Known:
    case Tag::Unknown:
      return Tag::Scientific;
    case Tag::Scientific:
      return std::nullopt;
  }
  return std::nullopt;
}

bool subsumes(Tag general, Tag specific) {
  for (std::optional<Tag> t = specific; t; t = parent(*t)) {
    if (*t == general) return true;
  }
  return false;
}

std::string_view to_string(Tag tag) {
  switch (tag) {
    case Tag::Continuous: return "Continuous";
    case Tag::Count: return "Count";
    case Tag::Multiclass: return "Multiclass";
    case Tag::OrderedFactor: return "OrderedFactor";
    case Tag::Textual: return "Textual";
    case Tag::Unknown: return "Unknown";
    case Tag::Infinite: return "Infinite";
    case Tag::Finite: return "Finite";
    case Tag::Known: return "Known";
    case Tag::Scientific: return "Scientific";
  }
  return "Unknown";
}

std::optional<Tag> parse_tag(std::string_view name) {
  for (Tag t : kAllTags) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

std::string to_string(const SciType& type) {
  std::string name(to_string(type.tag));
  if (type.nullable) return "Union{Missing, " + name + "}";
  return name;
}

}  // namespace modelkit
