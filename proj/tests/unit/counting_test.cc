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

#include <optional>
#include <vector>

#include <gtest/gtest.h>

#include "sketchforge/counting_metrics.h"
#include "sketchforge/error.h"

namespace sketchforge {
namespace {

using Preds = std::vector<std::optional<std::int64_t>>;

TEST(CountingAccuracy, ExactMatchRate) {
  const Preds preds = {3, 5, 7};
  const std::vector<std::int64_t> gt = {3, 5, 8};
  const CountingAccuracy a = ComputeCountingAccuracy(preds, gt);
  EXPECT_NEAR(a.accuracy, 200.0 / 3.0, 1e-9);
  EXPECT_EQ(a.correct, 2u);
  EXPECT_EQ(a.total, 3u);
}

TEST(CountingAccuracy, MissingPredictionsAreWrong) {
  const Preds preds = {3, std::nullopt, std::nullopt, 0};
  const std::vector<std::int64_t> gt = {3, 5, 0, 0};
  const CountingAccuracy a = ComputeCountingAccuracy(preds, gt);
  EXPECT_DOUBLE_EQ(a.accuracy, 50.0);
  EXPECT_EQ(a.unparseable, 2u);
}

TEST(CountingAccuracy, Bounds) {
  const std::vector<std::int64_t> gt = {1, 2, 3, 4};
  const Preds all = {1, 2, 3, 4};
  const Preds none = {0, 0, 0, 0};
  EXPECT_DOUBLE_EQ(ComputeCountingAccuracy(all, gt).accuracy, 100.0);
  EXPECT_DOUBLE_EQ(ComputeCountingAccuracy(none, gt).accuracy, 0.0);
  const Preds short_preds = {1};
  EXPECT_THROW(ComputeCountingAccuracy(short_preds, gt), Error);
}

}  // namespace
}  // namespace sketchforge
