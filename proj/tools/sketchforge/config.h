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

// Run configuration: one JSON document with a section per subcommand.
//
//   {
//     "seed": 7,
//     "workers": 4,
//     "output_dir": "out",
//     "sketch_gen": { "manifest": "images.jsonl", ... },
//     ...
//   }
//
// Relative paths resolve against the directory holding the config file.

#ifndef SKETCHFORGE_TOOLS_CONFIG_H_
#define SKETCHFORGE_TOOLS_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace sketchforge::cli {

inline constexpr const char* kConfigDirEnv = "SKETCHFORGE_CONFIG_DIR";

class RunConfig {
 public:
  // Locates `path` directly or under $SKETCHFORGE_CONFIG_DIR. With no
  // path, falls back to <config dir>/<subcommand>.json, then
  // <config dir>/sketchforge.json.
  static RunConfig Load(const std::optional<std::string>& path,
                        const std::string& subcommand);
  static RunConfig FromJson(nlohmann::json doc,
                            std::filesystem::path base_dir,
                            const std::string& subcommand);

  // "section.key=value" or "key=value"; value is read as JSON when it
  // parses, else as a string.
  void ApplyOverride(const std::string& assignment);
  void SetSeed(std::uint64_t seed);
  void SetWorkers(int workers);

  const std::string& subcommand() const { return subcommand_; }
  std::uint64_t seed() const;
  int workers() const;

  // The subcommand's section; empty object when absent.
  const nlohmann::json& section() const;
  bool Has(const std::string& key) const;

  std::string GetString(const std::string& key) const;
  std::string GetString(const std::string& key,
                        const std::string& fallback) const;
  double GetDouble(const std::string& key, double fallback) const;
  std::int64_t GetInt(const std::string& key, std::int64_t fallback) const;
  bool GetBool(const std::string& key, bool fallback) const;

  // Resolved input path; throws kInvalidArgument when missing or absent.
  std::filesystem::path InputPath(const std::string& key) const;
  std::optional<std::filesystem::path> OptionalInputPath(
      const std::string& key) const;
  std::filesystem::path Resolve(const std::string& path) const;

  // section.output_dir, else <output_dir>/<subcommand>.
  std::filesystem::path OutputDir() const;

  // The configuration without `workers` or any `output_dir`: neither
  // affects output bytes, so they stay out of every recorded snapshot.
  nlohmann::json Snapshot() const;

 private:
  const nlohmann::json& Value(const std::string& key) const;

  nlohmann::json doc_;
  std::filesystem::path base_dir_;
  std::string subcommand_;
  std::string section_key_;
};

// "sketch-gen" -> "sketch_gen".
std::string SectionKey(const std::string& subcommand);

}  // namespace sketchforge::cli

#endif  // SKETCHFORGE_TOOLS_CONFIG_H_
