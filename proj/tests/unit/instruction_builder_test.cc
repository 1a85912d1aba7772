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

#include <set>

#include <gtest/gtest.h>

#include "sketchforge/answer_grammar.h"
#include "sketchforge/error.h"
#include "sketchforge/instruction_builder.h"
#include "sketchforge/jsonl.h"
#include "synthetic.h"

namespace sketchforge {
namespace {

bool StartsWith(const std::string& s, std::string_view p) {
  return s.compare(0, p.size(), p) == 0;
}

ImageRecord ThreeCats() {
  ImageRecord r;
  r.id = "cats";
  r.width = r.height = 100;
  r.annotations = {{1, {0.0, 0.0, 0.2, 0.2}, 400},
                   {2, {0.3, 0.3, 0.5, 0.5}, 400},
                   {1, {0.6, 0.6, 0.8, 0.8}, 400},
                   {1, {0.1, 0.6, 0.3, 0.9}, 600}};
  return r;
}

TEST(GenCountingSample, AnswerIsTheClassCount) {
  const synth::CorpusFixture f;
  const PromptPool prompts = PromptPool::Default();
  const auto s = GenCountingSample(ThreeCats(), 1, prompts, f.pool, {"c0", 1});
  ASSERT_EQ(s.rounds.size(), 1u);
  EXPECT_EQ(s.rounds[0].response, "3");
  EXPECT_TRUE(StartsWith(s.rounds[0].prompt, "COUNT "));
  EXPECT_NE(s.rounds[0].prompt.find(kSketchToken), std::string::npos);
  EXPECT_TRUE(StartsWith(*s.sketch_id, "sk1-"));
  EXPECT_EQ(GenCountingSample(ThreeCats(), 1, prompts, f.pool, {"c0", 1}, 7)
                .rounds[0].response,
            "7");
  EXPECT_THROW(GenCountingSample(ThreeCats(), 3, prompts, f.pool, {"c0", 1}),
               Error);
  EXPECT_THROW(GenCountingSample(ThreeCats(), 1, prompts, {}, {"c0", 1}), Error);
  EXPECT_NO_THROW(ValidateInstructionSample(s));
}

TEST(GenDetectionSample, ListsEveryClassBox) {
  const synth::CorpusFixture f;
  const auto s = GenDetectionSample(ThreeCats(), 2, PromptPool::Default(),
                                    f.pool, {"d0", 5});
  EXPECT_TRUE(StartsWith(s.rounds[0].prompt, "BBOX "));
  const auto boxes = ParseNormalizedBoxes(s.rounds[0].response);
  ASSERT_EQ(boxes.size(), 1u);
  EXPECT_NEAR(boxes[0].x1, 0.3, 1e-9);
  const auto three = GenDetectionSample(ThreeCats(), 1, PromptPool::Default(),
                                        f.pool, {"d1", 5});
  EXPECT_EQ(ParseNormalizedBoxes(three.rounds[0].response).size(), 3u);
  EXPECT_NO_THROW(ValidateInstructionSample(three));
}

TEST(GenVqaSample, DescriptorAndOptionalSketch) {
  const synth::CorpusFixture f;
  QaItem item{"img", {{"What color?", "Red."}, {"Why?", "Paint."}}, 2};
  const PromptPool prompts = PromptPool::Default();
  const auto with = GenVqaSample(item, true, prompts, f.pool, {"v0", 3});
  EXPECT_TRUE(StartsWith(with.rounds[0].prompt, "VQA "));
  EXPECT_NE(with.rounds[0].prompt.find(kSketchToken), std::string::npos);
  EXPECT_NE(with.rounds[0].prompt.find("What color?"), std::string::npos);
  EXPECT_EQ(with.rounds[1], item.rounds[1]);
  EXPECT_TRUE(with.sketch_id);
  const auto without = GenVqaSample(item, false, prompts, f.pool, {"v1", 3});
  EXPECT_EQ(without.rounds[0].prompt, "VQA What color?");
  EXPECT_FALSE(without.sketch_id);
  item.class_id.reset();
  EXPECT_THROW(GenVqaSample(item, true, prompts, f.pool, {"v2", 3}), Error);
  item.rounds.clear();
  EXPECT_THROW(GenVqaSample(item, false, prompts, f.pool, {"v3", 3}), Error);
}

TEST(GenSbirPairs, BalancedLabelsAndClassContracts) {
  const synth::CorpusFixture f(5, 4, 300);
  std::vector<ImageRecord> images = f.single;
  images.push_back(f.images[2]);  // three objects: skipped
  const SbirBatch b = GenSbirPairs(images, f.pool, 25000, 0.5,
                                   PromptPool::Default(), 8);
  EXPECT_EQ(b.positives, 12500u);
  EXPECT_EQ(b.negatives, 12500u);
  EXPECT_EQ(b.skipped_images, (std::vector<std::string>{f.images[2].id}));
  std::map<std::string, int> image_class;
  for (const auto& r : images) image_class[r.id] = r.annotations[0].class_id;
  std::set<std::string> ids;
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& s : b.samples) {
    EXPECT_TRUE(ids.insert(s.sample_id).second);
    pairs.insert({s.image_id, *s.sketch_id});
    const std::string& answer = s.rounds[0].response;
    ASSERT_TRUE(answer == "yes" || answer == "no");
    EXPECT_TRUE(StartsWith(s.rounds[0].prompt, "SBIR "));
    const int sketch_class = *s.target_class;
    EXPECT_TRUE(StartsWith(*s.sketch_id, "sk" + std::to_string(sketch_class)));
    EXPECT_EQ(answer == "yes", sketch_class == image_class.at(s.image_id));
  }
  EXPECT_EQ(b.samples.size(), 25000u);
}

TEST(BuildFinetuneCorpus, ScaledComposition) {
  const synth::CorpusFixture f;
  const CompositionSpec spec = CompositionSpec::Scaled(0.001);
  EXPECT_EQ(spec.detect_n, 110u);
  EXPECT_EQ(spec.vqa_n, 50u);
  EXPECT_EQ(spec.count_n, 30u);
  EXPECT_EQ(spec.sbir_n, 25u);
  const Corpus c = BuildFinetuneCorpus(spec, f.Sources(), PromptPool::Default(), 17);
  const auto& r = c.report;
  EXPECT_FALSE(r.partial());
  EXPECT_EQ(r.realized.at(TaskKind::kDetect), 110u);
  EXPECT_EQ(r.realized.at(TaskKind::kVqa), 50u);
  EXPECT_EQ(r.realized.at(TaskKind::kCount), 30u);
  EXPECT_EQ(r.realized.at(TaskKind::kSbir), 25u);
  EXPECT_LE(std::max(r.vqa_with_sketch, r.vqa_without_sketch) -
                std::min(r.vqa_with_sketch, r.vqa_without_sketch),
            1u);
  EXPECT_LE(std::max(r.sbir_positive, r.sbir_negative) -
                std::min(r.sbir_positive, r.sbir_negative),
            1u);
  std::set<std::string> ids;
  for (const auto& s : c.samples) {
    EXPECT_TRUE(ids.insert(s.sample_id).second) << s.sample_id;
    EXPECT_NO_THROW(ValidateInstructionSample(s));
  }
  EXPECT_NE(r.ToCsv().find("BBOX,110,110,0"), std::string::npos);
}

TEST(BuildFinetuneCorpus, ShortfallIsReported) {
  const synth::CorpusFixture f(5, 4, 20);
  CompositionSpec spec;
  spec.detect_n = 500;
  spec.vqa_n = spec.count_n = spec.sbir_n = 5;
  const Corpus c = BuildFinetuneCorpus(spec, f.Sources(), PromptPool::Default(), 1);
  EXPECT_TRUE(c.report.partial());
  EXPECT_GT(c.report.Shortfall(TaskKind::kDetect), 0u);
  EXPECT_EQ(c.report.Shortfall(TaskKind::kVqa), 0u);
}

TEST(BuildFinetuneCorpus, IndependentOfWorkers) {
  const synth::CorpusFixture f;
  const CompositionSpec spec = CompositionSpec::Scaled(0.001);
  const std::string one = ToJsonl(
      BuildFinetuneCorpus(spec, f.Sources(), PromptPool::Default(), 5, 1).samples);
  for (int workers : {4, 8}) {
    EXPECT_EQ(ToJsonl(BuildFinetuneCorpus(spec, f.Sources(),
                                          PromptPool::Default(), 5, workers)
                          .samples),
              one);
  }
  EXPECT_NE(ToJsonl(BuildFinetuneCorpus(spec, f.Sources(),
                                        PromptPool::Default(), 6, 1)
                        .samples),
            one);
}

TEST(SketchDraw, UniformOverClassPool) {
  const synth::CorpusFixture f;  // 4 sketches per class
  std::map<std::string, int> hits;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    const auto s = GenCountingSample(ThreeCats(), 1, PromptPool::Default(), f.pool,
                                     {"c", DeriveSeed(77, {std::uint64_t(i)})});
    ++hits[*s.sketch_id];
  }
  ASSERT_EQ(hits.size(), 4u);
  for (const auto& [id, k] : hits) {
    const double freq = static_cast<double>(k) / n;
    EXPECT_GE(freq, 0.22) << id;
    EXPECT_LE(freq, 0.28) << id;
  }
}

}  // namespace
}  // namespace sketchforge
