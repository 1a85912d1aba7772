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

// Detection scoring for grounding answers.
//
// Acc@t is ground-truth recall under greedy one-to-one matching at IoU
// threshold t; Acc averages Acc@t over t = 0.50, 0.55, ..., 0.95. mAP is the
// COCO-style mean of 101-point interpolated average precision over classes
// and then thresholds. Size strata follow the COCO pixel-area convention.

#ifndef SKETCHFORGE_DETECTION_METRICS_H_
#define SKETCHFORGE_DETECTION_METRICS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sketchforge/box.h"

namespace sketchforge {

double Iou(const BoundingBox& a, const BoundingBox& b);

struct MatchPair {
  std::size_t pred = 0;
  std::size_t gt = 0;
  double iou = 0.0;
};

struct MatchResult {
  std::vector<MatchPair> pairs;  // in acceptance order
  std::vector<std::size_t> unmatched_preds;
  std::vector<std::size_t> unmatched_gts;
};

// Candidate pairs with iou >= threshold are visited by descending iou
// (ties: lower pred index, then lower gt index) and accepted while both
// sides are free. threshold must lie in (0, 1].
MatchResult GreedyMatch(std::span<const BoundingBox> preds,
                        std::span<const BoundingBox> gts, double threshold);

enum class SizeStratum { kSmall, kMedium, kLarge };

// S: area < 32^2, M: 32^2 <= area <= 96^2, L: area > 96^2 (pixels).
SizeStratum StratumOf(double area_px);

// 0.50, 0.55, ..., 0.95.
std::vector<double> DefaultIouThresholds();

// One evaluated (image, class) pair.
struct DetectionSample {
  int class_id = 0;
  std::vector<BoundingBox> gts;
  std::vector<BoundingBox> preds;  // in emission order
  // Per-pred confidences. Empty means emission order ranks the boxes.
  std::vector<double> scores;
  // Needed for size strata; samples without it are left out of strata.
  std::optional<ImageSize> size;
};

// Scores are percentages. A value is absent when no ground truth falls in
// its scope.
struct DetectionAccuracy {
  std::optional<double> acc;
  std::optional<double> acc50;
  std::optional<double> acc_small;
  std::optional<double> acc_medium;
  std::optional<double> acc_large;
  std::vector<double> thresholds;
  std::vector<double> acc_at;  // aligned with thresholds
};

// Micro-averages matched / total ground truth over the split; with
// `macro` the per-sample recall is averaged instead.
DetectionAccuracy ComputeDetectionAccuracy(
    std::span<const DetectionSample> samples,
    std::span<const double> thresholds, bool macro = false);

struct MeanAveragePrecision {
  std::optional<double> map;
  std::optional<double> map50;
  std::optional<double> map_small;
  std::optional<double> map_medium;
  std::optional<double> map_large;
};

// Ranking: explicit scores when given, otherwise earlier boxes rank higher.
// Equal scores fall back to sample order, then emission order. Within a
// sample, boxes claim the best free ground truth in rank order. In a size
// stratum, ground truth outside it is ignored, as are predictions matched to
// ignored ground truth and unmatched predictions whose area lies outside it.
// Classes without ground truth in scope are left out of the class mean.
MeanAveragePrecision ComputeMeanAveragePrecision(
    std::span<const DetectionSample> samples,
    std::span<const double> thresholds);

}  // namespace sketchforge

#endif  // SKETCHFORGE_DETECTION_METRICS_H_
