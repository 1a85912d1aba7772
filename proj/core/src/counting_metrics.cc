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

#include "sketchforge/counting_metrics.h"

#include "sketchforge/error.h"

namespace sketchforge {

CountingAccuracy ComputeCountingAccuracy(
    std::span<const std::optional<std::int64_t>> predictions,
    std::span<const std::int64_t> ground_truth) {
  if (predictions.size() != ground_truth.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "counting predictions and ground truth differ in length");
  }
  CountingAccuracy out;
  out.total = ground_truth.size();
  for (std::size_t i = 0; i < ground_truth.size(); ++i) {
    if (!predictions[i]) {
      ++out.unparseable;
    } else if (*predictions[i] == ground_truth[i]) {
      ++out.correct;
    }
  }
  if (out.total > 0) {
    out.accuracy = 100.0 * static_cast<double>(out.correct) /
                   static_cast<double>(out.total);
  }
  return out;
}

}  // namespace sketchforge
