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

#include "sketchforge/answer_grammar.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "sketchforge/error.h"

namespace sketchforge {
namespace {

constexpr double kAbsoluteCutoff = 1.5;

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }
bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

void SkipSpace(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && IsSpace(text[pos])) ++pos;
}

bool ReadNumber(std::string_view text, std::size_t& pos, double& value) {
  SkipSpace(text, pos);
  std::size_t start = pos;
  if (start < text.size() && text[start] == '+') ++start;
  const char* first = text.data() + start;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr == first) return false;
  pos = static_cast<std::size_t>(ptr - text.data());
  return std::isfinite(value);
}

bool Expect(std::string_view text, std::size_t& pos, char c) {
  SkipSpace(text, pos);
  if (pos < text.size() && text[pos] == c) {
    ++pos;
    return true;
  }
  return false;
}

// Tries to read "[a, b, c, d]" starting at an opening bracket.
std::optional<ParsedTuple> ReadTuple(std::string_view text, std::size_t& pos) {
  std::size_t p = pos + 1;
  double v[4];
  for (int i = 0; i < 4; ++i) {
    if (!ReadNumber(text, p, v[i])) return std::nullopt;
    if (i < 3 && !Expect(text, p, ',')) return std::nullopt;
  }
  if (!Expect(text, p, ']')) return std::nullopt;
  pos = p;
  ParsedTuple t{v[0], v[1], v[2], v[3], false};
  for (double x : v) t.absolute = t.absolute || x > kAbsoluteCutoff;
  return t;
}

}  // namespace

std::string FormatBoxList(std::span<const BoundingBox> boxes, int decimals) {
  if (boxes.empty()) {
    throw Error(ErrorCode::kEmptyAnswer,
                "a detection answer needs at least one box");
  }
  std::string out = "{";
  char buf[128];
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const BoundingBox& b = boxes[i];
    std::snprintf(buf, sizeof(buf), "%s[%.*f, %.*f, %.*f, %.*f]",
                  i == 0 ? "" : ", ", decimals, b.x1, decimals, b.y1,
                  decimals, b.x2, decimals, b.y2);
    out += buf;
  }
  out += "}";
  return out;
}

BoxListParse ParseBoxList(std::string_view text) {
  BoxListParse result;
  std::size_t pos = 0;
  std::size_t ordinal = 0;
  while ((pos = text.find('[', pos)) != std::string_view::npos) {
    std::size_t cursor = pos;
    std::optional<ParsedTuple> tuple = ReadTuple(text, cursor);
    if (!tuple) {
      ++pos;
      continue;
    }
    pos = cursor;
    tuple->ordinal = ordinal++;
    if (tuple->x1 < tuple->x2 && tuple->y1 < tuple->y2) {
      result.tuples.push_back(*tuple);
    } else {
      ++result.dropped;
    }
  }
  return result;
}

std::vector<BoundingBox> ResolveBoxes(const BoxListParse& parse,
                                      std::optional<ImageSize> size,
                                      int* dropped,
                                      std::vector<std::size_t>* ordinals) {
  std::vector<BoundingBox> boxes;
  int local_drops = parse.dropped;
  for (const ParsedTuple& t : parse.tuples) {
    BoundingBox box{t.x1, t.y1, t.x2, t.y2};
    if (t.absolute) {
      if (!size) {
        ++local_drops;
        continue;
      }
      const PixelBox px{t.x1, t.y1, t.x2, t.y2};
      if (!(px.x1 >= 0 && px.x2 <= size->width && px.y1 >= 0 &&
            px.y2 <= size->height)) {
        ++local_drops;
        continue;
      }
      box = NormalizeBox(px, size->width, size->height);
    }
    if (!box.IsValid()) {
      ++local_drops;
      continue;
    }
    boxes.push_back(box);
    if (ordinals != nullptr) ordinals->push_back(t.ordinal);
  }
  if (dropped != nullptr) *dropped += local_drops;
  return boxes;
}

std::vector<BoundingBox> ParseNormalizedBoxes(std::string_view text,
                                              int* dropped) {
  return ResolveBoxes(ParseBoxList(text), std::nullopt, dropped);
}

std::optional<std::int64_t> ParseCountAnswer(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (!IsDigit(text[i])) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < text.size() && IsDigit(text[end])) ++end;
    const bool negative = i > 0 && text[i - 1] == '-';
    const bool fraction_tail = i > 0 && text[i - 1] == '.';
    const bool fraction_head =
        end + 1 < text.size() && text[end] == '.' && IsDigit(text[end + 1]);
    if (!negative && !fraction_tail && !fraction_head) {
      std::int64_t value = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + end,
                                       value);
      if (ec == std::errc()) return value;
    }
    i = end;
    // Skip the rest of a decimal number so "2.5" does not yield 5.
    while (i < text.size() && (text[i] == '.' || IsDigit(text[i]))) ++i;
  }
  return std::nullopt;
}

std::optional<double> ParseYesProbability(const PredictionRecord& record) {
  if (record.yes_logprob && record.no_logprob) {
    // exp(ly) / (exp(ly) + exp(ln)), written to stay finite.
    const double diff = *record.no_logprob - *record.yes_logprob;
    return 1.0 / (1.0 + std::exp(diff));
  }
  std::string_view text = record.raw_text;
  std::size_t pos = 0;
  while (pos < text.size() &&
         (IsSpace(text[pos]) || text[pos] == '<' || text[pos] == '"' ||
          text[pos] == '\'' || text[pos] == '*')) {
    ++pos;
  }
  std::string word;
  while (pos < text.size() && std::isalpha(static_cast<unsigned char>(
                                  text[pos]))) {
    word += static_cast<char>(
        std::tolower(static_cast<unsigned char>(text[pos])));
    ++pos;
  }
  if (word == "yes") return 1.0;
  if (word == "no") return 0.0;
  return std::nullopt;
}

}  // namespace sketchforge
