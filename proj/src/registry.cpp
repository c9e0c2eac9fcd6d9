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

#include "modelkit/registry.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>

#include "modelkit/error.hpp"
#include "modelkit/zoo.hpp"

namespace modelkit {

namespace {

std::atomic<std::size_t> g_factory_invocations{0};

constexpr std::string_view kZooPrefix = "zoo:";

const std::vector<std::string_view> kFields = {
    "name",          "package",    "input_scitype", "target_scitype",
    "prediction_kind", "supervised", "load_path"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

ModelMetadata metadata_of(const ModelType& type) {
  ModelMetadata md;
  md.name = type.name();
  md.input_scitypes = type.input_scitypes();
  md.target_scitype = type.is_supervised() ? type.target_scitype() : std::nullopt;
  md.prediction_kind = type.prediction_kind();
  md.supervised = type.is_supervised();
  md.load_path = std::string(kZooPrefix) + type.name();
  return md;
}

void Registry::add(ModelMetadata metadata) {
  if (find(metadata.name)) {
    fail(ErrorCode::DuplicateName, "model already registered: " + metadata.name);
  }
  entries_.push_back(std::move(metadata));
}

const ModelMetadata* Registry::find(std::string_view name) const {
  for (const auto& md : entries_) {
    if (md.name == name) return &md;
  }
  return nullptr;
}

std::vector<std::string> Registry::names() const {
  std::vector<std::string> out;
  for (const auto& md : entries_) out.push_back(md.name);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ModelMetadata> Registry::matching(
    const std::vector<SciType>& features,
    const std::optional<SciType>& target) const {
  std::vector<ModelMetadata> out;
  for (const auto& md : entries_) {
    if (md.supervised != target.has_value()) continue;
    const bool inputs_ok =
        std::all_of(features.begin(), features.end(), [&](const SciType& st) {
          return !st.nullable &&
                 std::any_of(md.input_scitypes.begin(), md.input_scitypes.end(),
                             [&](Tag t) { return subsumes(t, st.tag); });
        });
    if (!inputs_ok) continue;
    if (target && (target->nullable || (md.target_scitype &&
                                        !subsumes(*md.target_scitype, target->tag)))) {
      continue;
    }
    out.push_back(md);
  }
  std::sort(out.begin(), out.end(),
            [](const ModelMetadata& a, const ModelMetadata& b) { return a.name < b.name; });
  return out;
}

std::vector<ModelMetadata> Registry::matching(
    const Schema& schema, const std::optional<SciType>& target) const {
  return matching(schema.scitypes, target);
}

Model Registry::instantiate(std::string_view name) const {
  const ModelMetadata* md = find(name);
  if (!md) fail(ErrorCode::UnknownModel, "unknown model: " + std::string(name));
  const std::string_view path = md->load_path;
  if (path.substr(0, kZooPrefix.size()) != kZooPrefix) {
    fail(ErrorCode::UnknownModel, "cannot load model from '" + md->load_path + "'");
  }
  auto type = find_zoo_type(path.substr(kZooPrefix.size()));
  ++g_factory_invocations;
  return type->make();
}

Registry builtin_registry() {
  Registry r;
  for (const auto& type : zoo_types()) r.add(metadata_of(*type));
  return r;
}

std::string serialize_registry(const Registry& registry) {
  std::string out = "# modelkit model registry\n";
  for (const auto& md : registry.entries()) {
    std::string inputs;
    for (Tag t : md.input_scitypes) {
      if (!inputs.empty()) inputs += ",";
      inputs += to_string(t);
    }
    out += "\n[model]\n";
    out += "name = " + md.name + "\n";
    out += "package = " + md.package + "\n";
    out += "input_scitype = " + inputs + "\n";
    out += "target_scitype = " +
           std::string(md.target_scitype ? to_string(*md.target_scitype) : "none") +
           "\n";
    out += "prediction_kind = " + std::string(to_string(md.prediction_kind)) + "\n";
    out += "supervised = " + std::string(md.supervised ? "true" : "false") + "\n";
    out += "load_path = " + md.load_path + "\n";
  }
  return out;
}

namespace {

struct PendingRecord {
  std::size_t line = 0;
  std::vector<std::pair<std::string, std::string>> fields;
};

[[noreturn]] void malformed(std::size_t line, const std::string& message) {
  fail(ErrorCode::MalformedFile,
       "registry line " + std::to_string(line) + ": " + message);
}

ModelMetadata finish(const PendingRecord& rec) {
  auto field = [&](std::string_view key) -> const std::string& {
    for (const auto& [k, v] : rec.fields) {
      if (k == key) return v;
    }
    malformed(rec.line, "record is missing field '" + std::string(key) + "'");
  };
  ModelMetadata md;
  md.name = field("name");
  md.package = field("package");
  md.load_path = field("load_path");
  if (md.name.empty()) malformed(rec.line, "empty model name");

  std::string_view inputs = field("input_scitype");
  while (!inputs.empty()) {
    const auto comma = inputs.find(',');
    const std::string tag = trim(inputs.substr(0, comma));
    auto t = parse_tag(tag);
    if (!t) malformed(rec.line, "unknown scitype '" + tag + "'");
    md.input_scitypes.push_back(*t);
    inputs = comma == std::string_view::npos ? "" : inputs.substr(comma + 1);
  }

  const std::string& target = field("target_scitype");
  if (target != "none") {
    auto t = parse_tag(target);
    if (!t) malformed(rec.line, "unknown scitype '" + target + "'");
    md.target_scitype = *t;
  }

  const std::string& kind = field("prediction_kind");
  bool kind_ok = false;
  for (PredictionKind k : {PredictionKind::Deterministic, PredictionKind::Probabilistic,
                           PredictionKind::Transformer}) {
    if (to_string(k) == kind) {
      md.prediction_kind = k;
      kind_ok = true;
    }
  }
  if (!kind_ok) malformed(rec.line, "unknown prediction_kind '" + kind + "'");

  const std::string& supervised = field("supervised");
  if (supervised != "true" && supervised != "false") {
    malformed(rec.line, "supervised must be true or false");
  }
  md.supervised = supervised == "true";
  if (md.supervised != (md.prediction_kind != PredictionKind::Transformer)) {
    malformed(rec.line, "supervised disagrees with prediction_kind");
  }
  return md;
}

}  // namespace

Registry parse_registry(std::string_view text) {
  Registry r;
  std::optional<PendingRecord> current;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  auto flush = [&] {
    if (!current) return;
    ModelMetadata md = finish(*current);
    if (r.find(md.name)) malformed(current->line, "duplicate model '" + md.name + "'");
    r.add(std::move(md));
    current.reset();
  };
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line == "[model]") {
      flush();
      current = PendingRecord{line_no, {}};
      continue;
    }
    if (!current) malformed(line_no, "expected [model]");
    const auto eq = line.find('=');
    if (eq == std::string::npos) malformed(line_no, "expected key = value");
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (std::find(kFields.begin(), kFields.end(), key) == kFields.end()) {
      malformed(line_no, "unknown field '" + key + "'");
    }
    for (const auto& f : current->fields) {
      if (f.first == key) malformed(line_no, "repeated field '" + key + "'");
    }
    current->fields.emplace_back(std::move(key), std::move(value));
  }
  flush();
  return r;
}

Registry load_registry(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_registry(buf.str());
}

void save_registry(const Registry& registry, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write file: " + path);
  out << serialize_registry(registry);
}

std::size_t factory_invocations() { return g_factory_invocations.load(); }
void reset_factory_invocations() { g_factory_invocations = 0; }

}  // namespace modelkit
