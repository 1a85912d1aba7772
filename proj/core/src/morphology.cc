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

#include "sketchforge/morphology.h"

#include <algorithm>
#include <array>
#include <functional>

#include "sketchforge/error.h"

namespace sketchforge {
namespace {

// One pass of a 1-D running extremum along x (horizontal) or y.
template <typename Pick>
Image RankFilter1D(const Image& src, int radius, bool horizontal, Pick pick) {
  const int w = src.width();
  const int h = src.height();
  Image dst(w, h, 1);
  const int n = horizontal ? w : h;
  const int lines = horizontal ? h : w;
  std::vector<std::uint8_t> line(static_cast<std::size_t>(n));
  for (int l = 0; l < lines; ++l) {
    for (int i = 0; i < n; ++i) {
      line[i] = horizontal ? src.at(i, l) : src.at(l, i);
    }
    for (int i = 0; i < n; ++i) {
      const int lo = std::max(0, i - radius);
      const int hi = std::min(n - 1, i + radius);
      std::uint8_t v = line[lo];
      for (int j = lo + 1; j <= hi; ++j) v = pick(v, line[j]);
      if (horizontal) {
        dst.at(i, l) = v;
      } else {
        dst.at(l, i) = v;
      }
    }
  }
  return dst;
}

template <typename Pick>
Image RankFilter(const Image& gray, int radius, Pick pick) {
  if (gray.channels() != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "morphology needs a single-channel raster");
  }
  if (radius < 1) {
    throw Error(ErrorCode::kInvalidArgument, "radius must be >= 1");
  }
  // Clamping the window to the valid range is equivalent to replicating
  // edge pixels for max/min.
  return RankFilter1D(RankFilter1D(gray, radius, true, pick), radius, false,
                      pick);
}

}  // namespace

Image Dilate(const Image& gray, int radius) {
  return RankFilter(gray, radius, [](std::uint8_t a, std::uint8_t b) {
    return std::max(a, b);
  });
}

Image Erode(const Image& gray, int radius) {
  return RankFilter(gray, radius, [](std::uint8_t a, std::uint8_t b) {
    return std::min(a, b);
  });
}

Image MorphGradient(const Image& gray, int radius) {
  Image hi = Dilate(gray, radius);
  const Image lo = Erode(gray, radius);
  auto out = hi.pixels();
  auto sub = lo.pixels();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(out[i] - sub[i]);
  }
  return hi;
}

int OtsuThreshold(std::span<const std::uint8_t> values) {
  std::array<double, 256> hist{};
  for (std::uint8_t v : values) hist[v] += 1.0;
  const double total = static_cast<double>(values.size());
  if (total == 0) return 0;
  double sum_all = 0.0;
  for (int i = 0; i < 256; ++i) sum_all += i * hist[i];

  int lowest = 0;
  while (hist[lowest] == 0) ++lowest;
  int highest = 255;
  while (hist[highest] == 0) --highest;
  if (lowest == highest) return lowest;

  double weight_lo = 0.0;
  double sum_lo = 0.0;
  double best = -1.0;
  int best_t = lowest;
  for (int t = 0; t < highest; ++t) {
    weight_lo += hist[t];
    sum_lo += t * hist[t];
    if (weight_lo == 0) continue;
    const double weight_hi = total - weight_lo;
    if (weight_hi == 0) break;
    const double mean_lo = sum_lo / weight_lo;
    const double mean_hi = (sum_all - sum_lo) / weight_hi;
    const double between =
        weight_lo * weight_hi * (mean_lo - mean_hi) * (mean_lo - mean_hi);
    if (between > best) {
      best = between;
      best_t = t;
    }
  }
  return best_t;
}

}  // namespace sketchforge
