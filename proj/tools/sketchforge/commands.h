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

#ifndef SKETCHFORGE_TOOLS_COMMANDS_H_
#define SKETCHFORGE_TOOLS_COMMANDS_H_

#include <filesystem>
#include <string>
#include <vector>

#include "config.h"
#include "sketchforge/records.h"
#include "sketchforge/taxonomy.h"

namespace sketchforge::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitPartial = 3,
  kExitInternal = 4,
};

// Each subcommand writes its outputs and a run manifest under
// config.OutputDir() and returns kExitOk or kExitPartial. Errors propagate
// as exceptions.
int RunSketchGen(const RunConfig& config);
int RunCuratePretrain(const RunConfig& config);
int RunMixBuild(const RunConfig& config);
int RunMixAudit(const RunConfig& config);
int RunInstrBuild(const RunConfig& config);
int RunGalleryBuild(const RunConfig& config);
int RunScore(const RunConfig& config);
int RunReport(const RunConfig& config);

// --- shared input helpers ---

struct ImageManifest {
  std::vector<ImageRecord> images;
  std::vector<std::string> class_names;  // empty for JSONL manifests
};

// ".json" files are read as COCO detection JSON, anything else as
// ImageRecord JSONL.
ImageManifest LoadImageManifest(const std::filesystem::path& path,
                                const Taxonomy* taxonomy = nullptr);

std::vector<SketchRecord> LoadSketches(const std::filesystem::path& path);

// One name per line.
std::vector<std::string> LoadNameList(const std::filesystem::path& path);

}  // namespace sketchforge::cli

#endif  // SKETCHFORGE_TOOLS_COMMANDS_H_
