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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "modelkit/cli.hpp"
#include "modelkit/config.hpp"
#include "test_util.hpp"

using namespace modelkit;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct GoldenCase {
  const char* name;
  std::vector<std::string> args;
};

std::vector<GoldenCase> golden_cases() {
  using testing::fixture;
  return {
      {"schema_regression", {"schema", fixture("regression.csv")}},
      {"schema_mixed", {"schema", fixture("mixed.csv")}},
      {"evaluate_regression", {"evaluate", fixture("evaluate_regression.json")}},
      {"evaluate_classification", {"evaluate", fixture("evaluate_classification.json")}},
      {"tune_ensemble", {"tune", fixture("tune_ensemble.json")}},
      {"tune_ridge_grid", {"tune", fixture("tune_ridge_grid.json")}},
      {"models", {"models"}},
      {"models_regression",
       {"models", "--matching", fixture("regression.csv"), "--target", "y"}},
      {"models_classification",
       {"models", "--matching", fixture("classification.csv"), "--target", "species"}},
  };
}

std::string golden_path(const std::string& name) {
  return std::string(MODELKIT_GOLDEN) + "/" + name + ".txt";
}

}  // namespace

TEST_CASE("golden outputs are reproduced byte for byte") {
  const bool update = std::getenv("MODELKIT_UPDATE_GOLDEN") != nullptr;
  for (const auto& c : golden_cases()) {
    const Run first = run(c.args);
    const Run second = run(c.args);
    CHECK_MESSAGE(first.code == 0, c.name, ": ", first.err);
    CHECK_MESSAGE(first.out == second.out, c.name);
    if (update) {
      std::filesystem::create_directories(MODELKIT_GOLDEN);
      std::ofstream(golden_path(c.name), std::ios::binary) << first.out;
    }
    CHECK_MESSAGE(testing::read_file(golden_path(c.name)) == first.out, c.name);
  }
}

TEST_CASE("evaluate table layout") {
  const Run r = run({"evaluate", testing::fixture("evaluate_regression.json")});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string rule, header, sep;
  std::getline(lines, rule);
  std::getline(lines, header);
  std::getline(lines, sep);
  CHECK(rule.find_first_not_of('-') == std::string::npos);
  CHECK(header.rfind("| measure ", 0) == 0);
  CHECK(header.find("| measurement ") != std::string::npos);
  CHECK(header.find("| per_fold ") != std::string::npos);
  CHECK(sep.find_first_not_of("|-") == std::string::npos);
  CHECK(r.out.find("\n| l2 ") != std::string::npos);
  CHECK(r.out.find("\n| rms ") != std::string::npos);
}

TEST_CASE("exit codes") {
  using testing::fixture;
  CHECK(run({"schema", fixture("regression.csv")}).code == kExitOk);
  CHECK(run({}).code == kExitConfig);
  CHECK(run({"frobnicate"}).code == kExitConfig);
  CHECK(run({"evaluate", fixture("bad_unknown_measure.json")}).code == kExitConfig);
  CHECK(run({"evaluate", fixture("bad_missing_target.json")}).code == kExitConfig);
  CHECK(run({"evaluate", fixture("bad_param_type.json")}).code == kExitConfig);
  CHECK(run({"tune", fixture("bad_range_path.json")}).code == kExitConfig);
  CHECK(run({"evaluate", fixture("bad_data_file.json")}).code == kExitData);
  CHECK(run({"evaluate", fixture("no_such_config.json")}).code == kExitConfig);
  CHECK(run({"schema", fixture("ragged.csv")}).code == kExitData);
  CHECK(run({"schema", fixture("missing.csv")}).code == kExitData);
  CHECK(run({"models", "--matching", fixture("mixed.csv"), "--target", "y"}).code ==
        kExitConfig);
  CHECK(run({"models", "--matching", fixture("regression.csv")}).code == kExitConfig);
  CHECK(run({"--registry", fixture("missing_registry.txt"), "models"}).code == kExitData);
  CHECK(run({"--registry", std::string(MODELKIT_DATA) + "/registry.txt", "models"}).out ==
        run({"models"}).out);
  const Run bad = run({"evaluate", fixture("bad_unknown_measure.json")});
  CHECK(bad.out.empty());
  CHECK(bad.err.rfind("error: ", 0) == 0);
  CHECK(std::count(bad.err.begin(), bad.err.end(), '\n') == 1);
}

TEST_CASE("tune writes the history file when asked") {
  const auto path = std::filesystem::temp_directory_path() / "modelkit_cli_history.csv";
  const Run to_file = run({"tune", testing::fixture("tune_ridge_grid.json"), "--history-out",
                           path.string()});
  REQUIRE(to_file.code == 0);
  CHECK(to_file.out.find("history: " + path.string()) != std::string::npos);
  const Run to_stdout = run({"tune", testing::fixture("tune_ridge_grid.json")});
  const std::string csv = testing::read_file(path.string());
  CHECK(csv.rfind("index,lambda,measurement\n", 0) == 0);
  CHECK(to_stdout.out.find("\n\n" + csv) != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("dump-config round trip") {
  const Run dumped = run({"--dump-config", "tune", testing::fixture("tune_ensemble.json")});
  REQUIRE(dumped.code == 0);
  const RunConfig reparsed = parse_config(dumped.out, std::filesystem::path(MODELKIT_FIXTURES));
  CHECK(dump_config(reparsed) == dumped.out);
  CHECK(reparsed.tuning.has_value());
  CHECK(reparsed.tuning->n == 25);
  CHECK(reparsed.tuning->ranges.size() == 2);
  CHECK(reparsed.tuning->ranges[0].kind == RangeKind::Integer);
}

TEST_CASE("config errors point at the offending key") {
  const std::filesystem::path base(MODELKIT_FIXTURES);
  auto message = [&](const std::string& text) {
    try {
      parse_config(text, base);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ConfigError);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  const std::string head =
      R"({"data": {"path": "regression.csv", "target": "y"}, "model": {"name": "RidgeRegressor"}, )";
  CHECK(message(head + R"("measures": ["l2"]})") == "no error");
  CHECK(message(head + R"("measures": []})").find("/measures") != std::string::npos);
  CHECK(message(head + R"("measures": ["l2"], "extra": 1})").find("/extra") != std::string::npos);
  CHECK(message(head + R"("measures": ["l2"], "resampling": {"kind": "CV", "nfolds": "x"}})")
            .find("/resampling/nfolds") != std::string::npos);
  CHECK(message("{not json").find("config error") != std::string::npos);
  const RunConfig cfg = parse_config(head + R"("measures": ["l2"]})", base);
  CHECK(cfg.data.path == (base / "regression.csv").string());
  CHECK(std::holds_alternative<CV>(cfg.resampling));
}
