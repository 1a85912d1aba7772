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

#include <random>

#include <gtest/gtest.h>

#include "sketchforge/box.h"
#include "sketchforge/error.h"
#include "sketchforge/jsonl.h"
#include "sketchforge/records.h"

namespace sketchforge {
namespace {

void ExpectBox(const BoundingBox& b, double x1, double y1, double x2,
               double y2) {
  EXPECT_NEAR(b.x1, x1, 1e-12);
  EXPECT_NEAR(b.y1, y1, 1e-12);
  EXPECT_NEAR(b.x2, x2, 1e-12);
  EXPECT_NEAR(b.y2, y2, 1e-12);
}

TEST(NormalizeBox, DividesByDimensions) {
  ExpectBox(NormalizeBox({64, 48, 320, 240}, 640, 480), 0.1, 0.1, 0.5, 0.5);
  ExpectBox(NormalizeBox({0, 0, 640, 480}, 640, 480), 0, 0, 1, 1);
}

TEST(NormalizeBox, RejectsDegenerateAndOutside) {
  try {
    NormalizeBox({10, 10, 10, 20}, 640, 480);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateGeometry);
  }
  try {
    NormalizeBox({10, 10, 700, 20}, 640, 480);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(DenormalizeBox, MultipliesByDimensions) {
  const PixelBox p = DenormalizeBox({0.1, 0.1, 0.5, 0.5}, 640, 480);
  EXPECT_NEAR(p.x1, 64, 1e-9);
  EXPECT_NEAR(p.y1, 48, 1e-9);
  EXPECT_NEAR(p.x2, 320, 1e-9);
  EXPECT_NEAR(p.y2, 240, 1e-9);
  EXPECT_EQ(DenormalizeBox({0, 0, 1, 1}, 100, 100), (PixelBox{0, 0, 100, 100}));
}

TEST(NormalizeBox, RoundTripsBothWays) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> dim(1, 4000);
  for (int i = 0; i < 100; ++i) {
    const int w = dim(rng), h = dim(rng);
    double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    if (a > b) std::swap(a, b);
    if (c > d) std::swap(c, d);
    if (a == b || c == d) continue;
    const BoundingBox box{a, c, b, d};
    const BoundingBox back =
        NormalizeBox(DenormalizeBox(box, w, h), w, h);
    ExpectBox(back, a, c, b, d);
    const PixelBox px{a * w, c * h, b * w, d * h};
    const PixelBox again = DenormalizeBox(NormalizeBox(px, w, h), w, h);
    EXPECT_NEAR(again.x1, px.x1, 1e-9);
    EXPECT_NEAR(again.y2, px.y2, 1e-9);
  }
}

TEST(MakeBox, EnforcesInvariants) {
  EXPECT_NO_THROW(MakeBox(0, 0, 1, 1));
  EXPECT_THROW(MakeBox(0.5, 0, 0.5, 1), Error);
  EXPECT_THROW(MakeBox(-0.1, 0, 0.5, 1), Error);
  EXPECT_THROW(MakeBox(0, 0, 0.5, 1.2), Error);
}

TEST(TaskKind, DescriptorsAreABijection) {
  for (TaskKind t : kAllTaskKinds) {
    EXPECT_EQ(TaskKindFromDescriptor(TaskDescriptor(t)), t);
  }
  EXPECT_EQ(TaskDescriptor(TaskKind::kDetect), "BBOX");
  EXPECT_EQ(TaskDescriptor(TaskKind::kCount), "COUNT");
  EXPECT_FALSE(TaskKindFromDescriptor("DETECT").has_value());
}

TEST(SketchSource, NamesRoundTrip) {
  for (SketchSource s : kAllSketchSources) {
    EXPECT_EQ(SketchSourceFromName(SketchSourceName(s)), s);
  }
  EXPECT_EQ(SketchSourceName(SketchSource::kSketchVclO365), "SketchVCL-O365");
}

TEST(Validate, InstructionSampleShape) {
  InstructionSample s{"s1", TaskKind::kCount, "img", "sk", {{"COUNT how many?", "3"}}, 7};
  EXPECT_NO_THROW(ValidateInstructionSample(s));
  s.rounds.push_back({"COUNT again", "4"});
  EXPECT_THROW(ValidateInstructionSample(s), Error);
  s.rounds.pop_back();
  s.rounds[0].prompt = "how many?";
  EXPECT_THROW(ValidateInstructionSample(s), Error);
  s.task = TaskKind::kVqa;
  s.rounds = {{"VQA a", "b"}, {"c", "d"}};
  EXPECT_NO_THROW(ValidateInstructionSample(s));
}

TEST(Validate, PredictionLogprobs) {
  PredictionRecord p{"s", "yes", -0.1, std::nullopt, {}};
  EXPECT_THROW(ValidatePredictionRecord(p), Error);
  p.no_logprob = -2.0;
  EXPECT_NO_THROW(ValidatePredictionRecord(p));
  p.yes_logprob = 0.5;
  EXPECT_THROW(ValidatePredictionRecord(p), Error);
}

TEST(Validate, AnnotationAreaConsistency) {
  Annotation a{3, {0.1, 0.1, 0.5, 0.5}, 256 * 192};
  EXPECT_NO_THROW(ValidateAnnotation(a, {640, 480}, 10));
  a.area_px += 5;
  EXPECT_THROW(ValidateAnnotation(a, {640, 480}, 10), Error);
  a.area_px = 256 * 192;
  EXPECT_THROW(ValidateAnnotation(a, {640, 480}, 3), Error);
}

TEST(Jsonl, RecordsRoundTrip) {
  ImageRecord img{"i1", "a.png", 640, 480, {{2, {0.1, 0.2, 0.3, 0.4}, 2457.6}}};
  SketchRecord sk{"k1", 2, SketchSource::kQuickDraw, "k1.png", std::nullopt};
  InstructionSample s{"s1", TaskKind::kSbir, "i1", "k1", {{"SBIR ?", "yes"}}, 2};
  PredictionRecord p{"s1", "yes", -0.2, -1.9, {0.9, 0.1}};
  const nlohmann::json ji = img, jk = sk, js = s, jp = p;
  EXPECT_EQ(ji.get<ImageRecord>().annotations[0].box, img.annotations[0].box);
  EXPECT_EQ(jk["source"], "QuickDraw");
  EXPECT_TRUE(jk["origin_image_id"].is_null());
  EXPECT_EQ(js["task"], "SBIR");
  const auto s2 = js.get<InstructionSample>();
  EXPECT_EQ(s2.rounds, s.rounds);
  EXPECT_EQ(s2.target_class, 2);
  const auto p2 = jp.get<PredictionRecord>();
  EXPECT_EQ(p2.box_scores, p.box_scores);
  EXPECT_EQ(p2.no_logprob, -1.9);
}

TEST(Jsonl, HeaderLineIsSkipped) {
  std::vector<SketchRecord> in = {
      {"a", 1, SketchSource::kSketchy, "a.png", "img"},
      {"b", 2, SketchSource::kExternal, "b.png", std::nullopt}};
  const std::string text = ToJsonl(in, nlohmann::json{{"seed", 3}});
  EXPECT_EQ(text.rfind("{\"__header__\"", 0), 0u);
  const auto path = std::filesystem::temp_directory_path() / "sf_header.jsonl";
  WriteFileAtomic(path, text);
  const auto out = ReadJsonl<SketchRecord>(path);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].origin_image_id, "img");
  EXPECT_EQ(out[1].source, SketchSource::kExternal);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace sketchforge
