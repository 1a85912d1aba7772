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

#ifndef SKETCHFORGE_RECORDS_H_
#define SKETCHFORGE_RECORDS_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sketchforge/box.h"

namespace sketchforge {

struct Annotation {
  int class_id = 0;
  BoundingBox box;
  double area_px = 0.0;  // absolute pixel area, drives S/M/L strata
};

struct ImageRecord {
  std::string id;
  std::string path;
  int width = 0;
  int height = 0;
  std::vector<Annotation> annotations;

  ImageSize size() const { return {width, height}; }
};

enum class SketchSource {
  kSketchVclO365,
  kSketchVclOi,
  kSketchVclC,
  kSketchy,
  kQuickDraw,
  kExternal,
};

inline constexpr std::array<SketchSource, 6> kAllSketchSources = {
    SketchSource::kSketchVclO365, SketchSource::kSketchVclOi,
    SketchSource::kSketchVclC,    SketchSource::kSketchy,
    SketchSource::kQuickDraw,     SketchSource::kExternal};

std::string_view SketchSourceName(SketchSource source);
std::optional<SketchSource> SketchSourceFromName(std::string_view name);

struct SketchRecord {
  std::string id;
  int class_id = 0;
  SketchSource source = SketchSource::kExternal;
  std::string path;
  std::optional<std::string> origin_image_id;
};

enum class TaskKind { kCount, kDetect, kVqa, kSbir };

inline constexpr std::array<TaskKind, 4> kAllTaskKinds = {
    TaskKind::kCount, TaskKind::kDetect, TaskKind::kVqa, TaskKind::kSbir};

// "COUNT", "BBOX", "VQA", "SBIR".
std::string_view TaskDescriptor(TaskKind task);
std::optional<TaskKind> TaskKindFromDescriptor(std::string_view descriptor);

struct Round {
  std::string prompt;
  std::string response;

  friend bool operator==(const Round&, const Round&) = default;
};

struct InstructionSample {
  std::string sample_id;
  TaskKind task = TaskKind::kCount;
  std::string image_id;
  std::optional<std::string> sketch_id;
  std::vector<Round> rounds;
  // Absent for VQA samples generated without a sketch.
  std::optional<int> target_class;
};

struct PredictionRecord {
  std::string sample_id;
  std::string raw_text;
  std::optional<double> yes_logprob;
  std::optional<double> no_logprob;
  // Optional per-box confidences for detection answers, in emission order.
  std::vector<double> box_scores;
};

// Invariant checks; each throws Error(kInvalidArgument) describing the
// first violation found.
void ValidateAnnotation(const Annotation& annotation, const ImageSize& size,
                        int num_classes);
void ValidateImageRecord(const ImageRecord& record, int num_classes);
void ValidateInstructionSample(const InstructionSample& sample);
void ValidatePredictionRecord(const PredictionRecord& record);

}  // namespace sketchforge

#endif  // SKETCHFORGE_RECORDS_H_
