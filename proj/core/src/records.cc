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

#include "sketchforge/records.h"

#include <cmath>
#include <string>

#include "sketchforge/error.h"

namespace sketchforge {
namespace {

constexpr std::array<std::string_view, 6> kSourceNames = {
    "SketchVCL-O365", "SketchVCL-OI", "SketchVCL-C",
    "Sketchy",        "QuickDraw",    "External"};

constexpr std::array<std::string_view, 4> kDescriptors = {"COUNT", "BBOX",
                                                          "VQA", "SBIR"};

[[noreturn]] void Invalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidArgument, message);
}

}  // namespace

std::string_view SketchSourceName(SketchSource source) {
  return kSourceNames[static_cast<std::size_t>(source)];
}

std::optional<SketchSource> SketchSourceFromName(std::string_view name) {
  for (std::size_t i = 0; i < kSourceNames.size(); ++i) {
    if (kSourceNames[i] == name) return kAllSketchSources[i];
  }
  return std::nullopt;
}

std::string_view TaskDescriptor(TaskKind task) {
  return kDescriptors[static_cast<std::size_t>(task)];
}

std::optional<TaskKind> TaskKindFromDescriptor(std::string_view descriptor) {
  for (std::size_t i = 0; i < kDescriptors.size(); ++i) {
    if (kDescriptors[i] == descriptor) return kAllTaskKinds[i];
  }
  return std::nullopt;
}

void ValidateAnnotation(const Annotation& annotation, const ImageSize& size,
                        int num_classes) {
  if (annotation.class_id < 0 ||
      (num_classes > 0 && annotation.class_id >= num_classes)) {
    Invalid("class_id " + std::to_string(annotation.class_id) +
            " outside taxonomy");
  }
  if (!annotation.box.IsValid()) Invalid("annotation box is not normalized");
  if (!(annotation.area_px > 0.0)) Invalid("annotation area_px must be > 0");
  const double expected = annotation.box.Area() * size.width * size.height;
  if (std::abs(expected - annotation.area_px) > 1.0) {
    Invalid("annotation area_px " + std::to_string(annotation.area_px) +
            " inconsistent with box area " + std::to_string(expected));
  }
}

void ValidateImageRecord(const ImageRecord& record, int num_classes) {
  if (record.id.empty()) Invalid("image id is empty");
  if (record.width < 1 || record.height < 1) {
    Invalid("image " + record.id + " has non-positive dimensions");
  }
  for (const Annotation& a : record.annotations) {
    ValidateAnnotation(a, record.size(), num_classes);
  }
}

void ValidateInstructionSample(const InstructionSample& sample) {
  if (sample.rounds.empty()) Invalid(sample.sample_id + ": no rounds");
  if (sample.task != TaskKind::kVqa && sample.rounds.size() != 1) {
    Invalid(sample.sample_id + ": task requires exactly one round");
  }
  if (!sample.rounds.front().prompt.starts_with(TaskDescriptor(sample.task))) {
    Invalid(sample.sample_id + ": first prompt lacks task descriptor");
  }
}

void ValidatePredictionRecord(const PredictionRecord& record) {
  if (record.yes_logprob.has_value() != record.no_logprob.has_value()) {
    Invalid(record.sample_id + ": yes/no log-probabilities come in pairs");
  }
  if (record.yes_logprob && (*record.yes_logprob > 0.0 ||
                             *record.no_logprob > 0.0)) {
    Invalid(record.sample_id + ": log-probabilities must be <= 0");
  }
}

}  // namespace sketchforge
