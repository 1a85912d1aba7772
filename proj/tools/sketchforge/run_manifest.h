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

#ifndef SKETCHFORGE_TOOLS_RUN_MANIFEST_H_
#define SKETCHFORGE_TOOLS_RUN_MANIFEST_H_

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "config.h"

namespace sketchforge::cli {

inline constexpr const char* kToolName = "sketchforge";
inline constexpr const char* kPartialSuffix = ".partial";

std::string Sha256Hex(std::string_view bytes);
std::string Sha256File(const std::filesystem::path& path);

// Header object for JSONL outputs: tool, version, subcommand, seed, config.
nlohmann::json OutputHeader(const RunConfig& config);

// Per-run record of inputs, outputs and outcome, written last and
// atomically as <output dir>/run_manifest.json. Paths are recorded relative
// to the output directory (outputs) or by config key (inputs) so that
// manifests from different checkouts compare equal.
class RunManifest {
 public:
  RunManifest(const RunConfig& config, std::filesystem::path output_dir);

  void AddInput(const std::string& key, const std::filesystem::path& path);

  // Writes `contents` to `name` (plus ".partial" when `partial`) inside the
  // output directory, atomically, and records its digest. Returns the path.
  std::filesystem::path WriteOutput(const std::string& name,
                                    std::string_view contents,
                                    bool partial = false);

  // Records one digest over every regular file below `dir`, hashing the
  // sorted (relative path, file digest) list.
  void AddOutputTree(const std::string& name, const std::filesystem::path& dir);

  nlohmann::json& summary() { return summary_; }
  void MarkPartial() { partial_ = true; }
  bool partial() const { return partial_; }

  std::filesystem::path Write() const;

 private:
  const RunConfig& config_;
  std::filesystem::path output_dir_;
  nlohmann::json inputs_ = nlohmann::json::array();
  nlohmann::json outputs_ = nlohmann::json::array();
  nlohmann::json summary_ = nlohmann::json::object();
  bool partial_ = false;
};

}  // namespace sketchforge::cli

#endif  // SKETCHFORGE_TOOLS_RUN_MANIFEST_H_
