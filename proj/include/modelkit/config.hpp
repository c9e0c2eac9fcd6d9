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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "modelkit/evaluation.hpp"
#include "modelkit/scitype.hpp"
#include "modelkit/tuning.hpp"

namespace modelkit {

/// A hyperparameter value from a config file. Strings name a registered
/// model and replace a nested model.
using ConfigValue = std::variant<double, std::int64_t, bool, std::string>;

struct DataConfig {
  std::string path;  // resolved against the config file's directory
  std::string target;
  std::vector<std::pair<std::string, Tag>> coercions;
  std::vector<std::string> categorical_columns;
};

struct ModelConfig {
  std::string name;
  std::vector<std::pair<std::string, ConfigValue>> params;  // dotted paths
};

struct TuningSection {
  TuningStrategy strategy = RandomSearch{};
  std::vector<NumericRange> ranges;
  std::int64_t n = 10;
  std::int64_t seed = 0;
  std::optional<std::string> measure;  // defaults to the first measure
  std::optional<std::string> history;  // CSV output path
};

struct RunConfig {
  DataConfig data;
  ModelConfig model;
  Resampling resampling = CV{};
  std::vector<std::string> measures;
  std::optional<TuningSection> tuning;
};

/// Parses the JSON config. Every structural problem raises ConfigError
/// with a JSON-pointer location, e.g. "config error at /resampling/nfolds:
/// expected a positive integer".
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

/// The effective config as JSON, defaults filled in; parse_config of the
/// result yields an equal config.
std::string dump_config(const RunConfig& config);

}  // namespace modelkit
