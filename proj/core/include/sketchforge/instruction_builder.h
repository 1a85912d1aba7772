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

#ifndef SKETCHFORGE_INSTRUCTION_BUILDER_H_
#define SKETCHFORGE_INSTRUCTION_BUILDER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sketchforge/prompt_pool.h"
#include "sketchforge/records.h"

namespace sketchforge {

// Class id -> sketches available for that class.
using SketchPool = std::map<int, std::vector<SketchRecord>>;

SketchPool MakeSketchPool(std::span<const SketchRecord> sketches);

// Task sizes for one fine-tuning corpus.
struct CompositionSpec {
  std::size_t detect_n = 110000;
  std::size_t vqa_n = 50000;
  std::size_t count_n = 30000;
  std::size_t sbir_n = 25000;
  double vqa_sketch_fraction = 0.5;
  double sbir_positive_fraction = 0.5;

  // The full-size mix (110K / 50K / 30K / 25K) multiplied by `scale`, each
  // size rounded to the nearest integer.
  static CompositionSpec Scaled(double scale);

  void Validate() const;
};

// Question/answer rounds ingested for one image.
struct QaItem {
  std::string image_id;
  std::vector<Round> rounds;     // prompt = question, response = answer
  std::optional<int> class_id;   // needed to attach a sketch
};

// Per-sample inputs shared by the single-sample generators.
struct SampleContext {
  std::string sample_id;
  std::uint64_t seed = 0;
};

// Response is the number of class_id annotations, or `count_override`
// when a dataset-level count is known. Throws kInvalidArgument when the
// class is absent from the image or the pool.
InstructionSample GenCountingSample(
    const ImageRecord& image, int class_id, const PromptPool& prompts,
    const SketchPool& sketches, const SampleContext& context,
    std::optional<std::int64_t> count_override = std::nullopt);

// Response lists every class_id box of the image, in annotation order.
InstructionSample GenDetectionSample(const ImageRecord& image, int class_id,
                                     const PromptPool& prompts,
                                     const SketchPool& sketches,
                                     const SampleContext& context);

// The first question gets the VQA descriptor (and the sketch token when a
// sketch is attached). Throws kInvalidArgument for empty rounds, or when a
// sketch is requested for an item without a pooled class.
InstructionSample GenVqaSample(const QaItem& item, bool with_sketch,
                               const PromptPool& prompts,
                               const SketchPool& sketches,
                               const SampleContext& context);

struct SbirBatch {
  std::vector<InstructionSample> samples;
  std::vector<std::string> skipped_images;  // multi-object or unpooled class
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

// Pairs single-object images with sketches. round(n_pairs * fraction) pairs
// are positives (same-class sketch); the rest use a sketch of a uniformly
// chosen other class. Answers are exactly "yes" or "no". Sample ids are
// "<id_prefix><index>".
SbirBatch GenSbirPairs(std::span<const ImageRecord> images,
                       const SketchPool& sketches, std::size_t n_pairs,
                       double positive_fraction, const PromptPool& prompts,
                       std::uint64_t seed,
                       const std::string& id_prefix = "sbir-");

struct CorpusSources {
  std::span<const ImageRecord> detection_images;
  std::span<const ImageRecord> counting_images;
  std::span<const ImageRecord> sbir_images;
  std::span<const QaItem> qa_items;
  const SketchPool* sketches = nullptr;
  // (image id, class id) -> ground-truth count overriding annotations.
  std::map<std::pair<std::string, int>, std::int64_t> counts;
};

struct CompositionReport {
  std::map<TaskKind, std::size_t> requested;
  std::map<TaskKind, std::size_t> realized;
  std::map<TaskKind, std::map<SketchSource, std::size_t>> per_source;
  std::size_t vqa_with_sketch = 0;
  std::size_t vqa_without_sketch = 0;
  std::size_t sbir_positive = 0;
  std::size_t sbir_negative = 0;
  std::size_t sbir_skipped_images = 0;

  std::size_t Shortfall(TaskKind task) const;
  bool partial() const;
  std::string ToCsv() const;
};

struct Corpus {
  std::vector<InstructionSample> samples;
  CompositionReport report;
};

// Emits the four task subsets at the requested sizes, then shuffles the
// union with the seed. Output does not depend on `workers`.
Corpus BuildFinetuneCorpus(const CompositionSpec& spec,
                           const CorpusSources& sources,
                           const PromptPool& prompts, std::uint64_t seed,
                           int workers = 1);

}  // namespace sketchforge

#endif  // SKETCHFORGE_INSTRUCTION_BUILDER_H_
