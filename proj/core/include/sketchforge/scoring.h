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

// Joins ground-truth instruction samples with model predictions and scores
// them per sketch source.

#ifndef SKETCHFORGE_SCORING_H_
#define SKETCHFORGE_SCORING_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "sketchforge/box.h"
#include "sketchforge/metric_report.h"
#include "sketchforge/records.h"
#include "sketchforge/sbir.h"

namespace sketchforge {

struct ScoringContext {
  std::string label;
  std::string dataset;
  // Sketch id -> record; groups rows by sketch source when non-empty.
  std::map<std::string, SketchRecord> sketches;
  // Image id -> size; enables size strata and absolute-pixel answers.
  std::map<std::string, ImageSize> image_sizes;
  bool macro = false;
};

// "Acc" per row. Missing or unparseable answers count as wrong.
MetricReport ScoreCounting(std::span<const InstructionSample> ground_truth,
                           std::span<const PredictionRecord> predictions,
                           const ScoringContext& context);

// "Acc", "Acc@0.5", "Acc_S", "Acc_M", "Acc_L", "mAP", "mAP@0.5", "mAP_S",
// "mAP_M", "mAP_L" per row.
MetricReport ScoreDetection(std::span<const InstructionSample> ground_truth,
                            std::span<const PredictionRecord> predictions,
                            const ScoringContext& context);

// Structural conformance only: "Answered" (non-empty prediction) and
// "Prefixed" (first prompt carries the VQA descriptor).
MetricReport ScoreVqa(std::span<const InstructionSample> ground_truth,
                      std::span<const PredictionRecord> predictions,
                      const ScoringContext& context);

// "Acc@K" for each k, grouped by query sketch source.
MetricReport ScoreSbir(const GallerySpec& gallery, const ScoreMatrix& scores,
                       const ScoringContext& context,
                       std::span<const std::size_t> ks);

}  // namespace sketchforge

#endif  // SKETCHFORGE_SCORING_H_
