// Copyright 2026 The Sketchforge Authors. All Rights Reserved.
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

#include "app.h"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commands.h"
#include "config.h"
#include "sketchforge/error.h"
#include "version.h"

namespace sketchforge::cli {
namespace {

struct Flags {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> output_dir;
  std::optional<std::string> task;
  std::vector<std::string> overrides;
};

struct Command {
  const char* name;
  const char* help;
  std::function<int(const RunConfig&)> run;
};

const std::vector<Command>& Commands() {
  static const std::vector<Command> kCommands = {
      {"sketch-gen", "Render instance sketches for every masked annotation",
       RunSketchGen},
      {"curate-pretrain", "Select and compose the pretraining set",
       RunCuratePretrain},
      {"mix-build", "Map sketch sources onto the taxonomy and build pools",
       RunMixBuild},
      {"mix-audit", "Check class pools against the sampling rules",
       RunMixAudit},
      {"instr-build", "Build the four-task instruction corpus", RunInstrBuild},
      {"gallery-build", "Build the retrieval gallery and query set",
       RunGalleryBuild},
      {"score", "Score predictions against ground truth", RunScore},
      {"report", "Merge metric reports into comparison tables", RunReport},
  };
  return kCommands;
}

int ExitFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInsufficientSupply:
    case ErrorCode::kEmptyPool:
      return kExitPartial;
    case ErrorCode::kIo:
      return kExitInternal;
    default:
      return kExitValidation;
  }
}

int Fail(std::ostream& err, int exit_code, const std::string& code,
         const std::string& message, const std::string& subcommand) {
  nlohmann::json j = {{"error",
                       {{"code", code},
                        {"message", message},
                        {"subcommand", subcommand},
                        {"exit_code", exit_code}}}};
  err << j.dump() << '\n';
  return exit_code;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Sketch-conditioned dataset construction and evaluation"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Flags flags;
  std::map<CLI::App*, const Command*> by_app;
  for (const Command& c : Commands()) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", flags.config,
                    std::string("JSON config file (default: $") +
                        kConfigDirEnv + "/<subcommand>.json)");
    sub->add_option("--seed", flags.seed, "Override the run seed");
    sub->add_option("--workers", flags.workers, "Worker threads")
        ->check(CLI::Range(1, 1024));
    sub->add_option("--output-dir", flags.output_dir,
                    "Override the subcommand's output directory");
    sub->add_option("--set", flags.overrides,
                    "Config override section.key=value (repeatable)");
    if (std::string(c.name) == "score") {
      sub->add_option("--task", flags.task, "count | bbox | vqa | sbir");
    }
    by_app[sub] = &c;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return Fail(err, kExitValidation, "usage", e.what(), "");
  }

  const Command* command = nullptr;
  for (CLI::App* sub : app.get_subcommands()) command = by_app.at(sub);
  const std::string name = command->name;
  try {
    RunConfig config = RunConfig::Load(flags.config, name);
    for (const std::string& o : flags.overrides) {
      config.ApplyOverride(o.find('.') == std::string::npos ||
                                   o.find('.') > o.find('=')
                               ? SectionKey(name) + "." + o
                               : o);
    }
    if (flags.seed) config.SetSeed(*flags.seed);
    if (flags.workers) config.SetWorkers(*flags.workers);
    if (flags.task) {
      config.ApplyOverride(SectionKey(name) + ".task=\"" + *flags.task + "\"");
    }
    if (flags.output_dir) {
      config.ApplyOverride(SectionKey(name) + ".output_dir=" +
                           nlohmann::json(*flags.output_dir).dump());
    }
    const int code = command->run(config);
    out << nlohmann::json{{"subcommand", name},
                          {"status", code == kExitOk ? "ok" : "partial"},
                          {"output_dir", config.OutputDir().string()}}
               .dump()
        << '\n';
    return code;
  } catch (const Error& e) {
    return Fail(err, ExitFor(e.code()), std::string(ErrorCodeName(e.code())),
                e.what(), name);
  } catch (const nlohmann::json::exception& e) {
    return Fail(err, kExitValidation, "parse", e.what(), name);
  } catch (const std::exception& e) {
    return Fail(err, kExitInternal, "internal", e.what(), name);
  }
}

}  // namespace sketchforge::cli
