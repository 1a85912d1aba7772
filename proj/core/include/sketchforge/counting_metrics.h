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

#ifndef SKETCHFORGE_COUNTING_METRICS_H_
#define SKETCHFORGE_COUNTING_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>

namespace sketchforge {

struct CountingAccuracy {
  double accuracy = 0.0;  // percentage
  std::size_t total = 0;
  std::size_t correct = 0;
  std::size_t unparseable = 0;
};

// Exact-match rate. A missing (nullopt) prediction counts as wrong.
// Throws kInvalidArgument when the spans differ in length.
CountingAccuracy ComputeCountingAccuracy(
    std::span<const std::optional<std::int64_t>> predictions,
    std::span<const std::int64_t> ground_truth);

}  // namespace sketchforge

#endif  // SKETCHFORGE_COUNTING_METRICS_H_
