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

#include "modelkit/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "modelkit/error.hpp"

namespace modelkit {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void config_error(const std::string& where, const std::string& what) {
  fail(ErrorCode::ConfigError,
       "config error at " + (where.empty() ? std::string("/") : where) + ": " + what);
}

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

// A JSON object reader that tracks its location and rejects unknown keys.
class Section {
 public:
  Section(const Json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) config_error(where_, "expected an object");
  }

  void allow(std::initializer_list<std::string_view> keys) const {
    std::set<std::string_view> allowed(keys);
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!allowed.count(it.key())) config_error(at(it.key()), "unknown key");
    }
  }

  bool has(const std::string& key) const { return j_.contains(key); }
  const Json& raw(const std::string& key) const { return j_.at(key); }
  std::string at(const std::string& key) const {
    return where_ + "/" + escape_pointer(key);
  }

  const Json& need(const std::string& key) const {
    if (!has(key)) config_error(at(key), "missing required key");
    return j_.at(key);
  }

  std::string string(const std::string& key) const {
    const Json& v = need(key);
    if (!v.is_string()) config_error(at(key), "expected a string");
    return v.get<std::string>();
  }

  double number(const std::string& key) const {
    const Json& v = need(key);
    if (!v.is_number()) config_error(at(key), "expected a number");
    return v.get<double>();
  }

  std::int64_t integer(const std::string& key) const {
    const Json& v = need(key);
    if (!v.is_number_integer()) config_error(at(key), "expected an integer");
    return v.get<std::int64_t>();
  }

  std::uint64_t seed(const std::string& key) const {
    const Json& v = need(key);
    if (!v.is_number_unsigned()) config_error(at(key), "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  bool boolean(const std::string& key) const {
    const Json& v = need(key);
    if (!v.is_boolean()) config_error(at(key), "expected true or false");
    return v.get<bool>();
  }

  Section object(const std::string& key) const { return {need(key), at(key)}; }

 private:
  const Json& j_;
  std::string where_;
};

Tag tag_at(const Json& v, const std::string& where) {
  if (!v.is_string()) config_error(where, "expected a scitype name");
  auto t = parse_tag(v.get<std::string>());
  if (!t) config_error(where, "unknown scitype '" + v.get<std::string>() + "'");
  return *t;
}

std::vector<std::string> string_list(const Section& s, const std::string& key) {
  const Json& v = s.need(key);
  if (!v.is_array()) config_error(s.at(key), "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) {
      config_error(s.at(key) + "/" + std::to_string(i), "expected a string");
    }
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

DataConfig parse_data(const Section& s, const std::filesystem::path& base_dir) {
  s.allow({"path", "target", "coercions", "categorical_columns"});
  DataConfig d;
  std::filesystem::path p = s.string("path");
  if (p.empty()) config_error(s.at("path"), "empty path");
  d.path = (p.is_absolute() ? p : base_dir / p).lexically_normal().string();
  d.target = s.string("target");
  if (s.has("coercions")) {
    const Section c = s.object("coercions");
    for (auto it = s.raw("coercions").begin(); it != s.raw("coercions").end(); ++it) {
      d.coercions.emplace_back(it.key(), tag_at(it.value(), c.at(it.key())));
    }
  }
  if (s.has("categorical_columns")) {
    d.categorical_columns = string_list(s, "categorical_columns");
  }
  return d;
}

ModelConfig parse_model(const Section& s) {
  s.allow({"name", "params"});
  ModelConfig m;
  m.name = s.string("name");
  if (s.has("params")) {
    const Section p = s.object("params");
    for (auto it = s.raw("params").begin(); it != s.raw("params").end(); ++it) {
      const Json& v = it.value();
      ConfigValue value;
      if (v.is_boolean()) {
        value = v.get<bool>();
      } else if (v.is_number_integer()) {
        value = v.get<std::int64_t>();
      } else if (v.is_number()) {
        value = v.get<double>();
      } else if (v.is_string()) {
        value = v.get<std::string>();
      } else {
        config_error(p.at(it.key()), "expected a number, boolean or model name");
      }
      m.params.emplace_back(it.key(), std::move(value));
    }
  }
  return m;
}

Resampling parse_resampling(const Section& s) {
  const std::string kind = s.string("kind");
  Resampling r;
  if (kind == "CV") {
    s.allow({"kind", "nfolds", "shuffle", "seed"});
    CV cv;
    if (s.has("nfolds")) {
      const std::int64_t k = s.integer("nfolds");
      if (k < 2) config_error(s.at("nfolds"), "expected an integer >= 2");
      cv.nfolds = static_cast<std::size_t>(k);
    }
    if (s.has("shuffle")) cv.shuffle = s.boolean("shuffle");
    if (s.has("seed")) cv.seed = s.seed("seed");
    r = cv;
  } else if (kind == "Holdout") {
    s.allow({"kind", "fraction", "shuffle", "seed"});
    Holdout h;
    if (s.has("fraction")) {
      h.fraction = s.number("fraction");
      if (!(h.fraction > 0.0 && h.fraction < 1.0)) {
        config_error(s.at("fraction"), "expected a number in (0, 1)");
      }
    }
    if (s.has("shuffle")) h.shuffle = s.boolean("shuffle");
    if (s.has("seed")) h.seed = s.seed("seed");
    r = h;
  } else {
    config_error(s.at("kind"), "expected \"CV\" or \"Holdout\"");
  }
  return r;
}

NumericRange parse_range(const Section& s) {
  s.allow({"path", "lower", "upper", "scale", "kind"});
  NumericRange r;
  r.path = s.string("path");
  r.lower = s.number("lower");
  r.upper = s.number("upper");
  if (s.has("scale")) {
    const std::string scale = s.string("scale");
    if (scale == "linear") {
      r.scale = Scale::Linear;
    } else if (scale == "log") {
      r.scale = Scale::Log;
    } else {
      config_error(s.at("scale"), "expected \"linear\" or \"log\"");
    }
  }
  if (s.has("kind")) {
    const std::string kind = s.string("kind");
    if (kind == "float") {
      r.kind = RangeKind::Float;
    } else if (kind == "integer") {
      r.kind = RangeKind::Integer;
    } else {
      config_error(s.at("kind"), "expected \"float\" or \"integer\"");
    }
  }
  try {
    validate(r);
  } catch (const Error& e) {
    config_error(s.at("lower"), e.what());
  }
  return r;
}

TuningSection parse_tuning(const Section& s) {
  s.allow({"strategy", "resolution", "ranges", "n", "seed", "measure", "history"});
  TuningSection t;
  std::string strategy = s.has("strategy") ? s.string("strategy") : "RandomSearch";
  if (strategy == "RandomSearch") {
    if (s.has("resolution")) {
      config_error(s.at("resolution"), "only valid with the Grid strategy");
    }
    t.strategy = RandomSearch{};
  } else if (strategy == "Grid") {
    Grid g;
    if (s.has("resolution")) {
      const std::int64_t res = s.integer("resolution");
      if (res < 2) config_error(s.at("resolution"), "expected an integer >= 2");
      g.resolution = static_cast<std::size_t>(res);
    }
    t.strategy = g;
  } else {
    config_error(s.at("strategy"), "expected \"RandomSearch\" or \"Grid\"");
  }
  const Json& ranges = s.need("ranges");
  if (!ranges.is_array() || ranges.empty()) {
    config_error(s.at("ranges"), "expected a non-empty array of ranges");
  }
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    t.ranges.push_back(parse_range(Section(ranges[i], s.at("ranges") + "/" +
                                                          std::to_string(i))));
  }
  if (s.has("n")) {
    t.n = s.integer("n");
    if (t.n < 1) config_error(s.at("n"), "expected an integer >= 1");
  }
  if (s.has("seed")) t.seed = static_cast<std::int64_t>(s.seed("seed"));
  if (s.has("measure")) t.measure = s.string("measure");
  if (s.has("history")) t.history = s.string("history");
  return t;
}

}  // namespace

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::ConfigError,
         "config error: invalid JSON at byte " + std::to_string(e.byte));
  }
  const Section root(j, "");
  root.allow({"data", "model", "resampling", "measures", "tuning"});
  RunConfig c;
  c.data = parse_data(root.object("data"), base_dir);
  c.model = parse_model(root.object("model"));
  if (root.has("resampling")) c.resampling = parse_resampling(root.object("resampling"));
  c.measures = string_list(root, "measures");
  if (c.measures.empty()) config_error(root.at("measures"), "expected at least one measure");
  if (root.has("tuning")) {
    c.tuning = parse_tuning(root.object("tuning"));
    if (c.tuning->history) {
      std::filesystem::path h = *c.tuning->history;
      c.tuning->history =
          (h.is_absolute() ? h : base_dir / h).lexically_normal().string();
    }
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ConfigError, "cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::filesystem::path dir =
      std::filesystem::absolute(path).parent_path();
  return parse_config(buf.str(), dir);
}

std::string dump_config(const RunConfig& c) {
  Json j;
  Json data;
  data["path"] = c.data.path;
  data["target"] = c.data.target;
  Json coercions = Json::object();
  for (const auto& [col, tag] : c.data.coercions) coercions[col] = to_string(tag);
  data["coercions"] = coercions;
  data["categorical_columns"] = c.data.categorical_columns;
  j["data"] = data;

  Json model;
  model["name"] = c.model.name;
  Json params = Json::object();
  for (const auto& [path, value] : c.model.params) {
    std::visit([&, p = path](const auto& v) { params[p] = v; }, value);
  }
  model["params"] = params;
  j["model"] = model;

  Json rs;
  if (const auto* h = std::get_if<Holdout>(&c.resampling)) {
    rs["kind"] = "Holdout";
    rs["fraction"] = h->fraction;
    rs["shuffle"] = h->shuffle;
    rs["seed"] = h->seed;
  } else {
    const auto& cv = std::get<CV>(c.resampling);
    rs["kind"] = "CV";
    rs["nfolds"] = cv.nfolds;
    rs["shuffle"] = cv.shuffle;
    rs["seed"] = cv.seed;
  }
  j["resampling"] = rs;
  j["measures"] = c.measures;

  if (c.tuning) {
    const TuningSection& t = *c.tuning;
    Json tj;
    if (const auto* g = std::get_if<Grid>(&t.strategy)) {
      tj["strategy"] = "Grid";
      tj["resolution"] = g->resolution;
    } else {
      tj["strategy"] = "RandomSearch";
    }
    Json ranges = Json::array();
    for (const auto& r : t.ranges) {
      Json rj;
      rj["path"] = r.path;
      rj["lower"] = r.lower;
      rj["upper"] = r.upper;
      rj["scale"] = std::string(to_string(r.scale));
      rj["kind"] = std::string(to_string(r.kind));
      ranges.push_back(rj);
    }
    tj["ranges"] = ranges;
    tj["n"] = t.n;
    tj["seed"] = t.seed;
    if (t.measure) tj["measure"] = *t.measure;
    if (t.history) tj["history"] = *t.history;
    j["tuning"] = tj;
  }
  return j.dump(2) + "\n";
}

}  // namespace modelkit
