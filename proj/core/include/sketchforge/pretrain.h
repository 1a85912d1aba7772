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

#ifndef SKETCHFORGE_PRETRAIN_H_
#define SKETCHFORGE_PRETRAIN_H_

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "sketchforge/box.h"
#include "sketchforge/prompt_pool.h"
#include "sketchforge/random.h"
#include "sketchforge/records.h"

namespace sketchforge {

inline constexpr std::int64_t kDefaultTailThreshold = 5000;

// Instance counts per class. Classes never seen read as zero.
class ClassHistogram {
 public:
  void Add(int class_id, std::int64_t n = 1) { counts_[class_id] += n; }
  std::int64_t Count(int class_id) const;
  std::int64_t Total() const;
  const std::map<int, std::int64_t>& counts() const { return counts_; }

 private:
  std::map<int, std::int64_t> counts_;
};

ClassHistogram BuildClassHistogram(std::span<const ImageRecord> manifest);

// Classes with 0 < count < threshold. threshold must be >= 1.
std::set<int> IdentifyTailClasses(const ClassHistogram& histogram,
                                  std::int64_t threshold =
                                      kDefaultTailThreshold);

struct PretrainPick {
  std::string image_id;
  int target_class = 0;
  bool tail = false;
};

struct PretrainSelection {
  std::vector<PretrainPick> picks;  // head picks first, then tail picks
  std::size_t head_shortfall = 0;
  std::size_t tail_shortfall = 0;
  std::map<int, std::size_t> tail_per_class;

  bool partial() const { return head_shortfall + tail_shortfall > 0; }
};

// Head: n_head annotated images drawn uniformly without replacement, each
// paired with one of its annotated classes chosen uniformly. Tail: cycles
// over the tail classes in ascending id order, each turn taking a random
// not-yet-selected image that contains the class, until n_tail picks are
// made or every tail class runs dry.
PretrainSelection SamplePretrainSet(std::span<const ImageRecord> manifest,
                                    const ClassHistogram& histogram,
                                    std::size_t n_head, std::size_t n_tail,
                                    std::int64_t threshold,
                                    std::uint64_t seed);

struct PretrainContext {
  std::string sample_id;
  std::string image_id;
  std::string sketch_id;
  int target_class = 0;
};

// Pretraining record in the VQA format: the response names the sketched
// class, continues with the scene caption and ends with the class boxes.
// Throws kInvalidArgument for an empty caption and kEmptyAnswer for an empty
// box list.
InstructionSample ComposePretrainSample(const std::string& caption,
                                        const std::string& class_name,
                                        std::span<const BoundingBox> boxes,
                                        const PretrainContext& context,
                                        const PromptPool& prompts, Rng& rng);

}  // namespace sketchforge

#endif  // SKETCHFORGE_PRETRAIN_H_
