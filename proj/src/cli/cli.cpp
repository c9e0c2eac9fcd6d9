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

#include "modelkit/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "modelkit/config.hpp"
#include "modelkit/csv.hpp"
#include "modelkit/error.hpp"
#include "modelkit/evaluation.hpp"
#include "modelkit/registry.hpp"
#include "modelkit/tuning.hpp"

namespace modelkit {

namespace {

// A failure already classified by exit status.
struct CliFailure {
  int status;
  std::string message;
};

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::UnknownModel:
    case ErrorCode::UnknownMeasure:
    case ErrorCode::UnknownPath:
    case ErrorCode::UnknownColumn:
    case ErrorCode::MeasureModelMismatch:
    case ErrorCode::InvalidArgument:
    case ErrorCode::EmptyGrid:
      return kExitConfig;
    default:
      return kExitData;
  }
}

// Runs `f`, classifying any library error as a config error.
template <class F>
auto config_step(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw CliFailure{kExitConfig, e.what()};
  }
}

// Runs `f`, classifying library errors by code.
template <class F>
auto data_step(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw CliFailure{status_for(e.code()), e.what()};
  }
}

Registry load_registry_or_builtin(const std::string& path) {
  if (path.empty()) return builtin_registry();
  return data_step([&] { return load_registry(path); });
}

Column coerce_target(const Column& y) {
  return scitype_of(y).tag == Tag::Textual ? coerce(y, Tag::Multiclass) : y;
}

struct Task {
  Table X;
  Column y;
};

Task load_task(const DataConfig& d) {
  CsvOptions opts;
  opts.categorical_columns = d.categorical_columns;
  Table table = data_step([&] { return read_csv(d.path, opts); });
  for (const auto& [name, tag] : d.coercions) {
    config_step([&] { return table.column(name).size(); });
    table = data_step([&] {
      return table.with_column(name, coerce(table.column(name), tag));
    });
  }
  auto [X, y] = config_step([&] { return split_target(table, d.target); });
  return {std::move(X), data_step([&] { return coerce_target(y); })};
}

Model build_model(const Registry& registry, const ModelConfig& mc) {
  return config_step([&] {
    Model m = registry.instantiate(mc.name);
    for (const auto& [path, value] : mc.params) {
      if (const auto* name = std::get_if<std::string>(&value)) {
        m.set(path, registry.instantiate(*name));
      } else {
        std::visit(
            [&, p = path](const auto& v) {
              if constexpr (!std::is_same_v<std::decay_t<decltype(v)>, std::string>) {
                m.set(p, ParamValue(v));
              }
            },
            value);
      }
    }
    return m;
  });
}

int cmd_schema(const std::string& csv, std::ostream& out) {
  const Table t = data_step([&] { return read_csv(csv); });
  out << format_schema(schema(t));
  return kExitOk;
}

int cmd_evaluate(const RunConfig& config, const Registry& registry,
                 std::ostream& out) {
  const Model model = build_model(registry, config.model);
  for (const auto& m : config.measures) config_step([&] { return find_measure(m); });
  const Task task = load_task(config.data);
  const PerformanceEvaluation e = data_step([&] {
    return evaluate(model, task.X, task.y, config.resampling, config.measures);
  });
  out << render_table(e);
  return kExitOk;
}

int cmd_tune(const RunConfig& config, const Registry& registry,
             const std::string& history_out, std::ostream& out) {
  if (!config.tuning) {
    throw CliFailure{kExitConfig, "config error at /tuning: missing required key"};
  }
  const TuningSection& ts = *config.tuning;
  const Model base = build_model(registry, config.model);
  TuningConfig tc;
  tc.strategy = ts.strategy;
  tc.resampling = config.resampling;
  tc.ranges = ts.ranges;
  tc.measure = ts.measure.value_or(config.measures.front());
  tc.threads = std::max(1u, std::thread::hardware_concurrency());
  const Model tuned =
      config_step([&] { return tuned_model(base, tc, ts.n, ts.seed); });
  const Task task = load_task(config.data);
  const FitOutput fo = data_step([&] { return fit(tuned, task.X, task.y); });
  const TuningHistory& h = tuning_history(fo.report);

  const HistoryEntry& best = h.entries[h.best];
  out << "best model: " << best.model.to_string() << "\n";
  for (std::size_t i = 0; i < h.paths.size(); ++i) {
    out << "  " << h.paths[i] << " = " << best.values[i].to_string() << "\n";
  }
  out << "best " << h.measure << ": " << format_3g(best.measurement) << "\n";
  out << "evaluations: " << h.entries.size() << "\n";

  const std::string path = !history_out.empty() ? history_out : ts.history.value_or("");
  if (path.empty()) {
    out << "\n" << h.to_csv();
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw CliFailure{kExitData, "cannot write file: " + path};
    f << h.to_csv();
    out << "history: " << path << "\n";
  }
  return kExitOk;
}

int cmd_models(const Registry& registry, const std::string& csv,
               const std::string& target, std::ostream& out) {
  if (csv.empty() != target.empty()) {
    throw CliFailure{kExitConfig, "--matching and --target must be given together"};
  }
  if (csv.empty()) {
    for (const auto& name : registry.names()) out << name << "\n";
    return kExitOk;
  }
  const Table table = data_step([&] { return read_csv(csv); });
  auto [X, y] = config_step([&] { return split_target(table, target); });
  const Column yc = data_step([&] { return coerce_target(y); });
  for (const auto& md : registry.matching(schema(X), scitype_of(yc))) {
    out << md.name << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"modelkit: evaluate, tune and match models over CSV data",
               "modelkit"};
  app.require_subcommand(1);
  std::string registry_path;
  bool dump = false;
  app.add_option("--registry", registry_path, "model registry file");
  app.add_flag("--dump-config", dump, "print the effective config and exit");

  std::string schema_csv, config_path, history_out, matching_csv, target;
  auto* schema = app.add_subcommand("schema", "print column types of a CSV file");
  schema->add_option("csv", schema_csv)->required();
  auto* evaluate_cmd = app.add_subcommand("evaluate", "evaluate a model");
  evaluate_cmd->add_option("config", config_path)->required();
  auto* tune = app.add_subcommand("tune", "tune a model's hyperparameters");
  tune->add_option("config", config_path)->required();
  tune->add_option("--history-out", history_out, "history CSV path");
  auto* models = app.add_subcommand("models", "list registered models");
  models->add_option("--matching", matching_csv, "CSV file describing the task");
  models->add_option("--target", target, "target column of --matching");
  for (auto* sub : {schema, evaluate_cmd, tune, models}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (schema->parsed()) return cmd_schema(schema_csv, out);
    const Registry registry = load_registry_or_builtin(registry_path);
    if (models->parsed()) return cmd_models(registry, matching_csv, target, out);

    const RunConfig config = config_step([&] { return load_config(config_path); });
    if (dump) {
      out << dump_config(config);
      return kExitOk;
    }
    if (evaluate_cmd->parsed()) return cmd_evaluate(config, registry, out);
    return cmd_tune(config, registry, history_out, out);
  } catch (const CliFailure& f) {
    err << "error: " << f.message << "\n";
    return f.status;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return status_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace modelkit
