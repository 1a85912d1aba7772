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

// Answer grammars shared by the instruction builders and the scorers.
//
//   detection:  {[x1, y1, x2, y2], [x1, y1, x2, y2], ...}
//   counting:   a single decimal integer
//   retrieval:  yes / no, or a <yes>/<no> token log-probability pair

#ifndef SKETCHFORGE_ANSWER_GRAMMAR_H_
#define SKETCHFORGE_ANSWER_GRAMMAR_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sketchforge/box.h"
#include "sketchforge/records.h"

namespace sketchforge {

inline constexpr int kDefaultBoxDecimals = 2;

// Throws Error(kEmptyAnswer) for an empty list: a detection answer always
// carries at least one box.
std::string FormatBoxList(std::span<const BoundingBox> boxes,
                          int decimals = kDefaultBoxDecimals);

// One bracketed 4-tuple as it appeared in the text.
struct ParsedTuple {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;
  // Some coordinate exceeded 1.5, so the tuple is read as pixels.
  bool absolute = false;
  // Position among all tuples found in the text, dropped ones included.
  std::size_t ordinal = 0;
};

struct BoxListParse {
  std::vector<ParsedTuple> tuples;  // accepted tuples, in text order
  int dropped = 0;                  // inverted tuples

  std::size_t TupleCount() const { return tuples.size() + dropped; }
};

// Extracts every "[a, b, c, d]" tuple. Never throws; an answer with no
// tuples yields an empty list.
BoxListParse ParseBoxList(std::string_view text);

// Converts accepted tuples to normalized boxes. Absolute tuples are
// normalized with `size` when it is known and dropped otherwise; tuples that
// fall outside the unit square after conversion are dropped. Drops are added
// to *dropped when it is non-null; the tuple ordinal of each kept box is
// appended to *ordinals when that is non-null.
std::vector<BoundingBox> ResolveBoxes(
    const BoxListParse& parse, std::optional<ImageSize> size,
    int* dropped = nullptr, std::vector<std::size_t>* ordinals = nullptr);

// Convenience: parse and keep only boxes that resolve without image context.
std::vector<BoundingBox> ParseNormalizedBoxes(std::string_view text,
                                              int* dropped = nullptr);

// First non-negative integer token, or nullopt when the answer holds none.
std::optional<std::int64_t> ParseCountAnswer(std::string_view text);

// Probability of "yes". With both log-probabilities present this is the
// softmax over the two tokens; otherwise a leading yes/no word decides.
// nullopt when neither route applies.
std::optional<double> ParseYesProbability(const PredictionRecord& record);

}  // namespace sketchforge

#endif  // SKETCHFORGE_ANSWER_GRAMMAR_H_
