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

#include "sketchforge/xdog.h"

#include <algorithm>
#include <cmath>

#include "sketchforge/error.h"

namespace sketchforge {

void StylizerSpec::Validate() const {
  if (!(sigma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "stylizer sigma must be > 0");
  }
  if (!(k > 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "stylizer k must be > 1");
  }
  if (kind == StylizerKind::kExternalRasterDir && external_dir.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "external stylizer needs a raster directory");
  }
}

int StylizerSpec::SupportRadius() const {
  return static_cast<int>(std::ceil(3.0 * k * sigma));
}

std::vector<double> GaussianKernel(double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> taps(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    taps[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
    sum += taps[i + radius];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

std::vector<double> GaussianBlur(const std::vector<double>& plane, int width,
                                 int height, double sigma) {
  const std::vector<double> taps = GaussianKernel(sigma);
  const int radius = static_cast<int>(taps.size() / 2);
  std::vector<double> tmp(plane.size());
  std::vector<double> out(plane.size());
  for (int y = 0; y < height; ++y) {
    const double* row = plane.data() + static_cast<std::size_t>(y) * width;
    double* dst = tmp.data() + static_cast<std::size_t>(y) * width;
    for (int x = 0; x < width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        const int sx = std::clamp(x + i, 0, width - 1);
        acc += taps[i + radius] * row[sx];
      }
      dst[x] = acc;
    }
  }
  for (int y = 0; y < height; ++y) {
    double* dst = out.data() + static_cast<std::size_t>(y) * width;
    for (int i = -radius; i <= radius; ++i) {
      const int sy = std::clamp(y + i, 0, height - 1);
      const double* src = tmp.data() + static_cast<std::size_t>(sy) * width;
      const double t = taps[i + radius];
      for (int x = 0; x < width; ++x) dst[x] += t * src[x];
    }
  }
  return out;
}

std::vector<double> DogResponse(const Image& gray, const StylizerSpec& spec) {
  if (gray.channels() != 1) {
    throw Error(ErrorCode::kInvalidArgument, "stylizer needs grayscale input");
  }
  spec.Validate();
  auto px = gray.pixels();
  std::vector<double> plane(px.begin(), px.end());
  const std::vector<double> narrow =
      GaussianBlur(plane, gray.width(), gray.height(), spec.sigma);
  const std::vector<double> wide =
      GaussianBlur(plane, gray.width(), gray.height(), spec.k * spec.sigma);
  std::vector<double> response(plane.size());
  for (std::size_t i = 0; i < plane.size(); ++i) {
    response[i] = (narrow[i] - wide[i]) / 255.0;
  }
  return response;
}

StrokeMap XDoGStylize(const Image& gray, const StylizerSpec& spec) {
  if (spec.kind != StylizerKind::kNativeXDoG) {
    throw Error(ErrorCode::kInvalidArgument,
                "XDoGStylize needs a NativeXDoG stylizer spec");
  }
  const std::vector<double> response = DogResponse(gray, spec);
  StrokeMap strokes = StrokeMap::Blank(gray.width(), gray.height());
  for (int y = 0; y < gray.height(); ++y) {
    for (int x = 0; x < gray.width(); ++x) {
      if (response[static_cast<std::size_t>(y) * gray.width() + x] <
          -spec.epsilon) {
        strokes.SetStroke(x, y);
      }
    }
  }
  return strokes;
}

}  // namespace sketchforge
