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

#include "modelkit/column.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "modelkit/error.hpp"

namespace modelkit {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

void check_mask(const std::vector<bool>& missing, std::size_t n) {
  if (!missing.empty() && missing.size() != n) {
    fail(ErrorCode::LengthMismatch, "missing mask length " +
                                        std::to_string(missing.size()) +
                                        " does not match column length " +
                                        std::to_string(n));
  }
}

[[noreturn]] void wrong_kind(StorageKind have, std::string_view want) {
  fail(ErrorCode::TypeMismatch, "column has " + std::string(to_string(have)) +
                                    " storage, expected " + std::string(want));
}

[[noreturn]] void unsupported(const Column& c, Tag target) {
  fail(ErrorCode::UnsupportedCoercion,
       "cannot coerce " + std::string(to_string(c.kind())) + " column to " +
           std::string(to_string(target)));
}

template <class T>
std::vector<T> pick(const std::vector<T>& values,
                    std::span<const std::size_t> rows) {
  std::vector<T> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) out.push_back(values[r]);
  return out;
}

Column to_categorical(const Column& c, bool ordered,
                      const std::optional<std::vector<std::string>>& levels) {
  const std::size_t n = c.size();
  if (c.kind() == StorageKind::Categorical) {
    const auto& cat = c.categorical();
    if (!levels) {
      return Column::categorical(cat.codes, cat.pool, ordered,
                                 c.missing_mask());
    }
  }

  // Distinct non-missing labels, ordered numerically for numeric storage.
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!c.is_missing(i)) labels[i] = c.label(i);
  }

  std::vector<std::string> pool;
  if (levels) {
    pool = *levels;
    std::set<std::string> seen;
    for (const auto& l : pool) {
      if (!seen.insert(l).second) {
        fail(ErrorCode::InvalidValue, "duplicate level '" + l + "'");
      }
    }
  } else if (c.kind() == StorageKind::Integer) {
    std::set<std::int64_t> distinct;
    for (std::size_t i = 0; i < n; ++i) {
      if (!c.is_missing(i)) distinct.insert(c.integer_values()[i]);
    }
    for (auto v : distinct) pool.push_back(std::to_string(v));
  } else if (c.kind() == StorageKind::Float) {
    std::set<double> distinct;
    for (std::size_t i = 0; i < n; ++i) {
      if (!c.is_missing(i)) distinct.insert(c.float_values()[i]);
    }
    for (double v : distinct) pool.push_back(render_number(v));
  } else if (c.kind() == StorageKind::Categorical) {
    pool = *c.pool();
  } else {
    std::set<std::string> distinct;
    for (std::size_t i = 0; i < n; ++i) {
      if (!c.is_missing(i)) distinct.insert(labels[i]);
    }
    pool.assign(distinct.begin(), distinct.end());
  }

  std::map<std::string, std::uint32_t> index;
  for (std::size_t k = 0; k < pool.size(); ++k) {
    index.emplace(pool[k], static_cast<std::uint32_t>(k));
  }
  std::vector<std::uint32_t> codes(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (c.is_missing(i)) continue;
    auto it = index.find(labels[i]);
    if (it == index.end()) {
      fail(ErrorCode::InvalidValue,
           "value '" + labels[i] + "' is not among the supplied levels");
    }
    codes[i] = it->second;
  }
  return Column::categorical(std::move(codes), make_pool(std::move(pool)),
                             ordered, c.missing_mask());
}

}  // namespace

std::string_view to_string(StorageKind kind) {
  switch (kind) {
    case StorageKind::Float: return "Float64";
    case StorageKind::Integer: return "Int64";
    case StorageKind::Boolean: return "Bool";
    case StorageKind::String: return "String";
    case StorageKind::Categorical: return "Categorical";
  }
  return "?";
}

Pool make_pool(std::vector<std::string> levels) {
  return std::make_shared<const std::vector<std::string>>(std::move(levels));
}

std::optional<std::size_t> pool_index(const Pool& pool,
                                      std::string_view label) {
  for (std::size_t k = 0; k < pool->size(); ++k) {
    if ((*pool)[k] == label) return k;
  }
  return std::nullopt;
}

std::string render_number(double value) {
  if (std::isnan(value)) return "NaN";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

Column::Column(Storage storage, std::vector<bool> missing)
    : storage_(std::move(storage)), missing_(std::move(missing)) {
  check_mask(missing_, size());
  if (!missing_.empty() &&
      std::none_of(missing_.begin(), missing_.end(), [](bool b) { return b; })) {
    missing_.clear();
  }
}

Column Column::floats(std::vector<double> values, std::vector<bool> missing) {
  return Column(Storage(std::move(values)), std::move(missing));
}

Column Column::integers(std::vector<std::int64_t> values,
                        std::vector<bool> missing) {
  return Column(Storage(std::move(values)), std::move(missing));
}

Column Column::booleans(std::vector<bool> values, std::vector<bool> missing) {
  return Column(Storage(std::move(values)), std::move(missing));
}

Column Column::strings(std::vector<std::string> values,
                       std::vector<bool> missing) {
  return Column(Storage(std::move(values)), std::move(missing));
}

Column Column::categorical(std::vector<std::uint32_t> codes, Pool pool,
                           bool ordered, std::vector<bool> missing) {
  if (!pool) pool = make_pool({});
  check_mask(missing, codes.size());
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const bool miss = !missing.empty() && missing[i];
    if (!miss && codes[i] >= pool->size()) {
      fail(ErrorCode::IndexOutOfBounds,
           "categorical code " + std::to_string(codes[i]) +
               " outside pool of size " + std::to_string(pool->size()));
    }
  }
  return Column(Storage(CategoricalCodes{std::move(codes), std::move(pool),
                                         ordered}),
                std::move(missing));
}

Column Column::categorical_from_labels(
    const std::vector<std::string>& labels, bool ordered,
    const std::optional<std::vector<std::string>>& levels) {
  return to_categorical(Column::strings(labels), ordered, levels);
}

StorageKind Column::kind() const {
  return static_cast<StorageKind>(storage_.index());
}

std::size_t Column::size() const {
  return std::visit(overloaded{
                        [](const CategoricalCodes& c) { return c.codes.size(); },
                        [](const auto& v) { return v.size(); },
                    },
                    storage_);
}

bool Column::has_missing() const {
  return std::any_of(missing_.begin(), missing_.end(), [](bool b) { return b; });
}

const std::vector<double>& Column::float_values() const {
  if (auto* v = std::get_if<std::vector<double>>(&storage_)) return *v;
  wrong_kind(kind(), "Float64");
}

const std::vector<std::int64_t>& Column::integer_values() const {
  if (auto* v = std::get_if<std::vector<std::int64_t>>(&storage_)) return *v;
  wrong_kind(kind(), "Int64");
}

const std::vector<bool>& Column::boolean_values() const {
  if (auto* v = std::get_if<std::vector<bool>>(&storage_)) return *v;
  wrong_kind(kind(), "Bool");
}

const std::vector<std::string>& Column::string_values() const {
  if (auto* v = std::get_if<std::vector<std::string>>(&storage_)) return *v;
  wrong_kind(kind(), "String");
}

const CategoricalCodes& Column::categorical() const {
  if (auto* v = std::get_if<CategoricalCodes>(&storage_)) return *v;
  wrong_kind(kind(), "Categorical");
}

std::vector<double> Column::as_doubles() const {
  std::vector<double> out;
  if (kind() == StorageKind::Float) {
    out = float_values();
  } else if (kind() == StorageKind::Integer) {
    const auto& ints = integer_values();
    out.assign(ints.begin(), ints.end());
  } else {
    wrong_kind(kind(), "numeric");
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (is_missing(i)) out[i] = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

std::string Column::label(std::size_t i) const {
  if (is_missing(i)) return "";
  return std::visit(
      overloaded{
          [i](const std::vector<double>& v) { return render_number(v[i]); },
          [i](const std::vector<std::int64_t>& v) {
            return std::to_string(v[i]);
          },
          [i](const std::vector<bool>& v) {
            return std::string(v[i] ? "true" : "false");
          },
          [i](const std::vector<std::string>& v) { return v[i]; },
          [i](const CategoricalCodes& c) { return (*c.pool)[c.codes[i]]; },
      },
      storage_);
}

std::vector<std::string> Column::labels() const {
  std::vector<std::string> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(label(i));
  return out;
}

Column Column::select(std::span<const std::size_t> rows) const {
  const std::size_t n = size();
  for (std::size_t r : rows) {
    if (r >= n) {
      fail(ErrorCode::IndexOutOfBounds,
           "row index " + std::to_string(r) + " out of bounds for " +
               std::to_string(n) + " rows");
    }
  }
  std::vector<bool> missing;
  if (!missing_.empty()) missing = pick(missing_, rows);
  Storage storage = std::visit(
      overloaded{
          [&](const CategoricalCodes& c) -> Storage {
            return CategoricalCodes{pick(c.codes, rows), c.pool, c.ordered};
          },
          [&](const auto& v) -> Storage { return pick(v, rows); },
      },
      storage_);
  return Column(std::move(storage), std::move(missing));
}

bool operator==(const Column& a, const Column& b) {
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.is_missing(i) != b.is_missing(i)) return false;
  }
  if (a.kind() == StorageKind::Categorical) {
    const auto& ca = a.categorical();
    const auto& cb = b.categorical();
    if (ca.ordered != cb.ordered || *ca.pool != *cb.pool) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a.is_missing(i) && ca.codes[i] != cb.codes[i]) return false;
    }
    return true;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.is_missing(i)) continue;
    if (a.kind() == StorageKind::Float) {
      if (a.float_values()[i] != b.float_values()[i]) return false;
    } else if (a.label(i) != b.label(i)) {
      return false;
    }
  }
  return true;
}

SciType scitype_of(const Column& column) {
  SciType t;
  t.nullable = column.has_missing();
  switch (column.kind()) {
    case StorageKind::Float: t.tag = Tag::Continuous; break;
    case StorageKind::Integer: t.tag = Tag::Count; break;
    case StorageKind::Boolean: t.tag = Tag::Multiclass; break;
    case StorageKind::String: t.tag = Tag::Textual; break;
    case StorageKind::Categorical:
      t.tag = column.categorical().ordered ? Tag::OrderedFactor
                                           : Tag::Multiclass;
      break;
  }
  return t;
}

Column coerce(const Column& column, Tag target,
              const std::optional<std::vector<std::string>>& levels) {
  const std::size_t n = column.size();
  switch (target) {
    case Tag::Continuous:
      if (column.kind() == StorageKind::Float) return column;
      if (column.kind() == StorageKind::Integer) {
        std::vector<double> out(n, 0.0);
        const auto& ints = column.integer_values();
        for (std::size_t i = 0; i < n; ++i) {
          out[i] = static_cast<double>(ints[i]);
        }
        return Column::floats(std::move(out), column.missing_mask());
      }
      unsupported(column, target);

    case Tag::Count: {
      std::vector<std::int64_t> out(n, 0);
      if (column.kind() == StorageKind::Integer) {
        out = column.integer_values();
      } else if (column.kind() == StorageKind::Float) {
        const auto& fs = column.float_values();
        for (std::size_t i = 0; i < n; ++i) {
          if (column.is_missing(i)) continue;
          if (!std::isfinite(fs[i]) || std::floor(fs[i]) != fs[i]) {
            fail(ErrorCode::InvalidValue,
                 "non-integral value " + render_number(fs[i]) +
                     " cannot be a Count");
          }
          out[i] = static_cast<std::int64_t>(fs[i]);
        }
      } else {
        unsupported(column, target);
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (!column.is_missing(i) && out[i] < 0) {
          fail(ErrorCode::InvalidValue,
               "negative value " + std::to_string(out[i]) +
                   " cannot be a Count");
        }
      }
      return Column::integers(std::move(out), column.missing_mask());
    }

    case Tag::Multiclass:
    case Tag::OrderedFactor:
      return to_categorical(column, target == Tag::OrderedFactor, levels);

    case Tag::Textual: {
      if (column.kind() == StorageKind::String) return column;
      std::vector<std::string> out(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = column.label(i);
      return Column::strings(std::move(out), column.missing_mask());
    }

    default:
      unsupported(column, target);
  }
}

}  // namespace modelkit
