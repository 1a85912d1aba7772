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

#include "sketchforge/instruction_builder.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "sketchforge/answer_grammar.h"
#include "sketchforge/error.h"
#include "sketchforge/parallel.h"
#include "sketchforge/random.h"

namespace sketchforge {
namespace {

constexpr std::size_t kTableDetect = 110000;
constexpr std::size_t kTableVqa = 50000;
constexpr std::size_t kTableCount = 30000;
constexpr std::size_t kTableSbir = 25000;

// Stream keys for derived seeds.
enum SeedKey : std::uint64_t {
  kKeyDetect = 1,
  kKeyCount,
  kKeyVqa,
  kKeySbir,
  kKeyShuffle,
  kKeySelect,
};

std::string SampleId(std::string_view prefix, std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%06zu", index);
  return std::string(prefix) + buf;
}

std::size_t RoundToSize(double x) {
  return static_cast<std::size_t>(std::floor(x + 0.5));
}

const SketchRecord& DrawSketch(const SketchPool& sketches, int class_id,
                               Rng& rng) {
  auto it = sketches.find(class_id);
  if (it == sketches.end() || it->second.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "sketch pool has no class " + std::to_string(class_id));
  }
  return it->second[UniformIndex(rng, it->second.size())];
}

std::vector<BoundingBox> ClassBoxes(const ImageRecord& image, int class_id) {
  std::vector<BoundingBox> boxes;
  for (const Annotation& a : image.annotations) {
    if (a.class_id == class_id) boxes.push_back(a.box);
  }
  if (boxes.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "image " + image.id + " has no class " +
                    std::to_string(class_id));
  }
  return boxes;
}

InstructionSample SketchQuery(TaskKind task, const ImageRecord& image,
                              int class_id, const PromptPool& prompts,
                              const SketchPool& sketches,
                              const SampleContext& context,
                              std::string response) {
  Rng rng(context.seed);
  InstructionSample s;
  s.sample_id = context.sample_id;
  s.task = task;
  s.image_id = image.id;
  s.target_class = class_id;
  s.sketch_id = DrawSketch(sketches, class_id, rng).id;
  s.rounds.push_back({prompts.Draw(task, rng), std::move(response)});
  return s;
}

bool HasPooledClass(const SketchPool& sketches, int class_id) {
  auto it = sketches.find(class_id);
  return it != sketches.end() && !it->second.empty();
}

// Unique (image index, class) pairs whose class has pooled sketches, in
// manifest order then ascending class.
std::vector<std::pair<std::size_t, int>> ImageClassPairs(
    std::span<const ImageRecord> images, const SketchPool& sketches) {
  std::vector<std::pair<std::size_t, int>> pairs;
  for (std::size_t i = 0; i < images.size(); ++i) {
    std::set<int> classes;
    for (const Annotation& a : images[i].annotations) {
      if (HasPooledClass(sketches, a.class_id)) classes.insert(a.class_id);
    }
    for (int c : classes) pairs.emplace_back(i, c);
  }
  return pairs;
}

template <typename T>
void SeededShuffle(std::vector<T>& items, std::uint64_t seed) {
  Rng rng(seed);
  std::shuffle(items.begin(), items.end(), rng);
}

}  // namespace

SketchPool MakeSketchPool(std::span<const SketchRecord> sketches) {
  SketchPool pool;
  for (const SketchRecord& s : sketches) pool[s.class_id].push_back(s);
  return pool;
}

CompositionSpec CompositionSpec::Scaled(double scale) {
  CompositionSpec spec;
  spec.detect_n = RoundToSize(kTableDetect * scale);
  spec.vqa_n = RoundToSize(kTableVqa * scale);
  spec.count_n = RoundToSize(kTableCount * scale);
  spec.sbir_n = RoundToSize(kTableSbir * scale);
  return spec;
}

void CompositionSpec::Validate() const {
  auto fraction_ok = [](double f) { return f >= 0.0 && f <= 1.0; };
  if (!fraction_ok(vqa_sketch_fraction) ||
      !fraction_ok(sbir_positive_fraction)) {
    throw Error(ErrorCode::kInvalidArgument,
                "composition fractions must lie in [0, 1]");
  }
}

InstructionSample GenCountingSample(
    const ImageRecord& image, int class_id, const PromptPool& prompts,
    const SketchPool& sketches, const SampleContext& context,
    std::optional<std::int64_t> count_override) {
  const std::size_t n = ClassBoxes(image, class_id).size();
  const std::int64_t count =
      count_override.value_or(static_cast<std::int64_t>(n));
  return SketchQuery(TaskKind::kCount, image, class_id, prompts, sketches,
                     context, std::to_string(count));
}

InstructionSample GenDetectionSample(const ImageRecord& image, int class_id,
                                     const PromptPool& prompts,
                                     const SketchPool& sketches,
                                     const SampleContext& context) {
  const std::vector<BoundingBox> boxes = ClassBoxes(image, class_id);
  return SketchQuery(TaskKind::kDetect, image, class_id, prompts, sketches,
                     context, FormatBoxList(boxes));
}

InstructionSample GenVqaSample(const QaItem& item, bool with_sketch,
                               const PromptPool& prompts,
                               const SketchPool& sketches,
                               const SampleContext& context) {
  if (item.rounds.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "VQA item for image " + item.image_id + " has no rounds");
  }
  Rng rng(context.seed);
  InstructionSample s;
  s.sample_id = context.sample_id;
  s.task = TaskKind::kVqa;
  s.image_id = item.image_id;
  s.rounds = item.rounds;
  std::string& first = s.rounds.front().prompt;
  if (with_sketch) {
    if (!item.class_id) {
      throw Error(ErrorCode::kInvalidArgument,
                  "VQA item for image " + item.image_id +
                      " has no class to attach a sketch to");
    }
    s.sketch_id = DrawSketch(sketches, *item.class_id, rng).id;
    s.target_class = item.class_id;
    first = prompts.Draw(TaskKind::kVqa, rng) + " " + first;
  } else {
    first = std::string(TaskDescriptor(TaskKind::kVqa)) + " " + first;
  }
  return s;
}

SbirBatch GenSbirPairs(std::span<const ImageRecord> images,
                       const SketchPool& sketches, std::size_t n_pairs,
                       double positive_fraction, const PromptPool& prompts,
                       std::uint64_t seed, const std::string& id_prefix) {
  SbirBatch batch;
  std::vector<std::size_t> eligible;
  std::vector<int> image_class(images.size(), -1);
  for (std::size_t i = 0; i < images.size(); ++i) {
    std::set<int> classes;
    for (const Annotation& a : images[i].annotations) classes.insert(a.class_id);
    if (classes.size() != 1 || !HasPooledClass(sketches, *classes.begin())) {
      batch.skipped_images.push_back(images[i].id);
      continue;
    }
    image_class[i] = *classes.begin();
    eligible.push_back(i);
  }
  std::vector<int> pooled_classes;
  for (const auto& [c, list] : sketches) {
    if (!list.empty()) pooled_classes.push_back(c);
  }
  if (eligible.empty() || n_pairs == 0) return batch;

  Rng order_rng(DeriveSeed(seed, {kKeySelect}));
  std::shuffle(eligible.begin(), eligible.end(), order_rng);
  const std::size_t n_pos =
      std::min(n_pairs, RoundToSize(n_pairs * positive_fraction));
  std::vector<bool> labels(n_pairs, false);
  std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(n_pos),
            true);
  std::shuffle(labels.begin(), labels.end(), order_rng);

  for (std::size_t i = 0; i < n_pairs; ++i) {
    const ImageRecord& image = images[eligible[i % eligible.size()]];
    const int cls = image_class[eligible[i % eligible.size()]];
    Rng rng(DeriveSeed(seed, {kKeySbir, i}));
    int sketch_class = cls;
    if (!labels[i]) {
      std::vector<int> others;
      for (int c : pooled_classes) {
        if (c != cls) others.push_back(c);
      }
      if (others.empty()) continue;  // no negative possible
      sketch_class = others[UniformIndex(rng, others.size())];
    }
    InstructionSample s;
    s.sample_id = SampleId(id_prefix, batch.samples.size());
    s.task = TaskKind::kSbir;
    s.image_id = image.id;
    s.sketch_id = DrawSketch(sketches, sketch_class, rng).id;
    s.target_class = sketch_class;
    s.rounds.push_back({prompts.Draw(TaskKind::kSbir, rng),
                        labels[i] ? "yes" : "no"});
    batch.samples.push_back(std::move(s));
    if (labels[i]) {
      ++batch.positives;
    } else {
      ++batch.negatives;
    }
  }
  return batch;
}

std::size_t CompositionReport::Shortfall(TaskKind task) const {
  auto req = requested.find(task);
  auto got = realized.find(task);
  const std::size_t r = req == requested.end() ? 0 : req->second;
  const std::size_t g = got == realized.end() ? 0 : got->second;
  return r > g ? r - g : 0;
}

bool CompositionReport::partial() const {
  for (TaskKind t : kAllTaskKinds) {
    if (Shortfall(t) > 0) return true;
  }
  return false;
}

std::string CompositionReport::ToCsv() const {
  std::ostringstream out;
  out << "task,requested,realized,shortfall";
  for (SketchSource s : kAllSketchSources) out << ',' << SketchSourceName(s);
  out << '\n';
  for (TaskKind t : kAllTaskKinds) {
    auto get = [](const std::map<TaskKind, std::size_t>& m, TaskKind k) {
      auto it = m.find(k);
      return it == m.end() ? std::size_t{0} : it->second;
    };
    out << TaskDescriptor(t) << ',' << get(requested, t) << ','
        << get(realized, t) << ',' << Shortfall(t);
    const auto ps = per_source.find(t);
    for (SketchSource s : kAllSketchSources) {
      std::size_t n = 0;
      if (ps != per_source.end()) {
        auto it = ps->second.find(s);
        if (it != ps->second.end()) n = it->second;
      }
      out << ',' << n;
    }
    out << '\n';
  }
  out << "# vqa_with_sketch=" << vqa_with_sketch
      << " vqa_without_sketch=" << vqa_without_sketch
      << " sbir_positive=" << sbir_positive
      << " sbir_negative=" << sbir_negative
      << " sbir_skipped_images=" << sbir_skipped_images << '\n';
  return out.str();
}

Corpus BuildFinetuneCorpus(const CompositionSpec& spec,
                           const CorpusSources& sources,
                           const PromptPool& prompts, std::uint64_t seed,
                           int workers) {
  spec.Validate();
  if (sources.sketches == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "corpus needs a sketch pool");
  }
  const SketchPool& pool = *sources.sketches;
  Corpus corpus;
  CompositionReport& report = corpus.report;
  report.requested = {{TaskKind::kDetect, spec.detect_n},
                      {TaskKind::kVqa, spec.vqa_n},
                      {TaskKind::kCount, spec.count_n},
                      {TaskKind::kSbir, spec.sbir_n}};

  // Selection is sequential; generation of each sample is independent.
  auto det_pairs = ImageClassPairs(sources.detection_images, pool);
  SeededShuffle(det_pairs, DeriveSeed(seed, {kKeySelect, kKeyDetect}));
  det_pairs.resize(std::min(det_pairs.size(), spec.detect_n));

  auto count_pairs = ImageClassPairs(sources.counting_images, pool);
  SeededShuffle(count_pairs, DeriveSeed(seed, {kKeySelect, kKeyCount}));
  count_pairs.resize(std::min(count_pairs.size(), spec.count_n));

  std::vector<std::size_t> qa_order;
  for (std::size_t i = 0; i < sources.qa_items.size(); ++i) {
    if (!sources.qa_items[i].rounds.empty()) qa_order.push_back(i);
  }
  SeededShuffle(qa_order, DeriveSeed(seed, {kKeySelect, kKeyVqa}));
  qa_order.resize(std::min(qa_order.size(), spec.vqa_n));
  // The first round(n * fraction) sketch-capable items carry a sketch.
  const std::size_t want_sketch =
      RoundToSize(static_cast<double>(qa_order.size()) *
                  spec.vqa_sketch_fraction);
  std::vector<bool> qa_sketch(qa_order.size(), false);
  {
    std::size_t assigned = 0;
    for (std::size_t j = 0; j < qa_order.size() && assigned < want_sketch;
         ++j) {
      const QaItem& item = sources.qa_items[qa_order[j]];
      if (item.class_id && HasPooledClass(pool, *item.class_id)) {
        qa_sketch[j] = true;
        ++assigned;
      }
    }
  }

  const std::size_t n_det = det_pairs.size();
  const std::size_t n_count = count_pairs.size();
  const std::size_t n_vqa = qa_order.size();
  std::vector<InstructionSample> slots(n_det + n_count + n_vqa);
  ParallelFor(slots.size(), workers, [&](std::size_t i) {
    if (i < n_det) {
      const auto& [img, cls] = det_pairs[i];
      slots[i] = GenDetectionSample(
          sources.detection_images[img], cls, prompts, pool,
          {SampleId("bbox-", i), DeriveSeed(seed, {kKeyDetect, i})});
    } else if (i < n_det + n_count) {
      const std::size_t j = i - n_det;
      const auto& [img, cls] = count_pairs[j];
      const ImageRecord& image = sources.counting_images[img];
      std::optional<std::int64_t> override_count;
      auto it = sources.counts.find({image.id, cls});
      if (it != sources.counts.end()) override_count = it->second;
      slots[i] = GenCountingSample(
          image, cls, prompts, pool,
          {SampleId("count-", j), DeriveSeed(seed, {kKeyCount, j})},
          override_count);
    } else {
      const std::size_t j = i - n_det - n_count;
      slots[i] = GenVqaSample(
          sources.qa_items[qa_order[j]], qa_sketch[j], prompts, pool,
          {SampleId("vqa-", j), DeriveSeed(seed, {kKeyVqa, j})});
    }
  });

  SbirBatch sbir =
      GenSbirPairs(sources.sbir_images, pool, spec.sbir_n,
                   spec.sbir_positive_fraction, prompts,
                   DeriveSeed(seed, {kKeySbir}));

  corpus.samples = std::move(slots);
  for (auto& s : sbir.samples) corpus.samples.push_back(std::move(s));

  std::map<std::string, SketchSource> source_of;
  for (const auto& [c, list] : pool) {
    for (const SketchRecord& r : list) source_of.emplace(r.id, r.source);
  }
  for (const InstructionSample& s : corpus.samples) {
    ++report.realized[s.task];
    if (s.sketch_id) {
      auto it = source_of.find(*s.sketch_id);
      if (it != source_of.end()) ++report.per_source[s.task][it->second];
    }
    if (s.task == TaskKind::kVqa) {
      ++(s.sketch_id ? report.vqa_with_sketch : report.vqa_without_sketch);
    }
  }
  report.sbir_positive = sbir.positives;
  report.sbir_negative = sbir.negatives;
  report.sbir_skipped_images = sbir.skipped_images.size();

  SeededShuffle(corpus.samples, DeriveSeed(seed, {kKeyShuffle}));
  return corpus;
}

}  // namespace sketchforge
