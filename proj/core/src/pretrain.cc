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

#include "sketchforge/pretrain.h"

#include <algorithm>

#include "sketchforge/answer_grammar.h"
#include "sketchforge/error.h"

namespace sketchforge {

std::int64_t ClassHistogram::Count(int class_id) const {
  auto it = counts_.find(class_id);
  return it == counts_.end() ? 0 : it->second;
}

std::int64_t ClassHistogram::Total() const {
  std::int64_t total = 0;
  for (const auto& [id, n] : counts_) total += n;
  return total;
}

ClassHistogram BuildClassHistogram(std::span<const ImageRecord> manifest) {
  ClassHistogram hist;
  for (const ImageRecord& image : manifest) {
    for (const Annotation& a : image.annotations) hist.Add(a.class_id);
  }
  return hist;
}

std::set<int> IdentifyTailClasses(const ClassHistogram& histogram,
                                  std::int64_t threshold) {
  if (threshold < 1) {
    throw Error(ErrorCode::kInvalidArgument, "tail threshold must be >= 1");
  }
  std::set<int> tail;
  for (const auto& [id, n] : histogram.counts()) {
    if (n > 0 && n < threshold) tail.insert(id);
  }
  return tail;
}

PretrainSelection SamplePretrainSet(std::span<const ImageRecord> manifest,
                                    const ClassHistogram& histogram,
                                    std::size_t n_head, std::size_t n_tail,
                                    std::int64_t threshold,
                                    std::uint64_t seed) {
  PretrainSelection out;
  std::vector<bool> used(manifest.size(), false);
  std::vector<std::vector<int>> classes_of(manifest.size());
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    for (const Annotation& a : manifest[i].annotations) {
      classes_of[i].push_back(a.class_id);
    }
    std::sort(classes_of[i].begin(), classes_of[i].end());
    classes_of[i].erase(std::unique(classes_of[i].begin(), classes_of[i].end()),
                        classes_of[i].end());
    if (!classes_of[i].empty()) eligible.push_back(i);
  }

  Rng head_rng(DeriveSeed(seed, {0x68656164}));
  const std::vector<std::size_t> head =
      SampleWithoutReplacement(head_rng, eligible.size(), n_head);
  out.head_shortfall = n_head - head.size();
  for (std::size_t h : head) {
    const std::size_t img = eligible[h];
    const auto& classes = classes_of[img];
    used[img] = true;
    out.picks.push_back({manifest[img].id,
                         classes[UniformIndex(head_rng, classes.size())],
                         false});
  }

  const std::set<int> tail = IdentifyTailClasses(histogram, threshold);
  std::map<int, std::vector<std::size_t>> candidates;
  for (int c : tail) candidates[c];
  for (std::size_t i : eligible) {
    for (int c : classes_of[i]) {
      auto it = candidates.find(c);
      if (it != candidates.end()) it->second.push_back(i);
    }
  }

  Rng tail_rng(DeriveSeed(seed, {0x7461696c}));
  std::vector<int> rotation(tail.begin(), tail.end());
  std::size_t taken = 0;
  std::size_t turn = 0;
  while (taken < n_tail && !rotation.empty()) {
    turn %= rotation.size();
    const int c = rotation[turn];
    auto& pool = candidates[c];
    std::erase_if(pool, [&](std::size_t i) { return used[i]; });
    if (pool.empty()) {
      rotation.erase(rotation.begin() + static_cast<std::ptrdiff_t>(turn));
      continue;
    }
    const std::size_t pick = UniformIndex(tail_rng, pool.size());
    const std::size_t img = pool[pick];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    used[img] = true;
    out.picks.push_back({manifest[img].id, c, true});
    ++out.tail_per_class[c];
    ++taken;
    ++turn;
  }
  out.tail_shortfall = n_tail - taken;
  return out;
}

InstructionSample ComposePretrainSample(const std::string& caption,
                                        const std::string& class_name,
                                        std::span<const BoundingBox> boxes,
                                        const PretrainContext& context,
                                        const PromptPool& prompts, Rng& rng) {
  if (caption.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "pretraining sample needs a caption");
  }
  const std::string box_text = FormatBoxList(boxes);
  InstructionSample sample;
  sample.sample_id = context.sample_id;
  sample.task = TaskKind::kVqa;
  sample.image_id = context.image_id;
  sample.sketch_id = context.sketch_id;
  sample.target_class = context.target_class;
  std::string response = "The sketch shows a " + class_name + ". ";
  response += caption;
  if (response.back() != ' ') response += ' ';
  response += box_text;
  sample.rounds.push_back({prompts.DrawPretrain(rng), std::move(response)});
  return sample;
}

}  // namespace sketchforge
