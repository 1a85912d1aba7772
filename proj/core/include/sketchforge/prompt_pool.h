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

#ifndef SKETCHFORGE_PROMPT_POOL_H_
#define SKETCHFORGE_PROMPT_POOL_H_

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sketchforge/random.h"
#include "sketchforge/records.h"

namespace sketchforge {

// Placeholder that marks where the sketch is referenced in a template.
inline constexpr std::string_view kSketchToken = "<sketch>";

// Prompt templates per task plus the pretraining pool. Templates never name
// the object class; the sketch is the query.
class PromptPool {
 public:
  static constexpr std::size_t kMinTemplates = 3;

  // Built-in neutral paraphrases.
  static PromptPool Default();

  // Sections "[COUNT]", "[BBOX]", "[VQA]", "[SBIR]", "[PRETRAIN]", one
  // template per line; blank lines and lines starting with '#' are ignored.
  // Sections that are missing keep the built-in templates.
  static PromptPool Load(const std::filesystem::path& path);

  const std::vector<std::string>& Templates(TaskKind task) const;
  const std::vector<std::string>& PretrainTemplates() const {
    return pretrain_;
  }

  // Descriptor + " " + a uniformly chosen template.
  std::string Draw(TaskKind task, Rng& rng) const;
  std::string DrawPretrain(Rng& rng) const;

  // Throws kInvalidArgument when a pool has fewer than kMinTemplates
  // entries or a template lacks the sketch token.
  void Validate() const;

 private:
  std::array<std::vector<std::string>, 4> per_task_;
  std::vector<std::string> pretrain_;
};

}  // namespace sketchforge

#endif  // SKETCHFORGE_PROMPT_POOL_H_
