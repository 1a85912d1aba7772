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

#include "sketchforge/raster.h"

#include <algorithm>
#include <string>

#include "sketchforge/error.h"

namespace sketchforge {

Image::Image(int width, int height, int channels, std::uint8_t fill)
    : width_(width), height_(height), channels_(channels) {
  if (width < 1 || height < 1 || (channels != 1 && channels != 3)) {
    throw Error(ErrorCode::kInvalidArgument,
                "bad raster shape " + std::to_string(width) + "x" +
                    std::to_string(height) + "x" + std::to_string(channels));
  }
  pixels_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

MaskRaster::MaskRaster(int width, int height, std::vector<std::uint8_t> flags)
    : width_(width), height_(height), flags_(std::move(flags)) {
  if (width < 1 || height < 1 ||
      flags_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::kInvalidArgument, "mask shape mismatch");
  }
  for (std::uint8_t& f : flags_) f = f != 0;
  if (ForegroundCount() == 0) {
    throw Error(ErrorCode::kEmptyMask, "mask has no foreground pixel");
  }
}

MaskRaster MaskRaster::FromImage(const Image& image) {
  if (image.channels() != 1) {
    throw Error(ErrorCode::kInvalidArgument, "mask raster must be 1-channel");
  }
  auto px = image.pixels();
  return MaskRaster(image.width(), image.height(),
                    std::vector<std::uint8_t>(px.begin(), px.end()));
}

std::size_t MaskRaster::ForegroundCount() const {
  return static_cast<std::size_t>(
      std::count(flags_.begin(), flags_.end(), std::uint8_t{1}));
}

Image MaskRaster::ToImage() const {
  Image out(width_, height_, 1, 0);
  auto px = out.pixels();
  for (std::size_t i = 0; i < flags_.size(); ++i) px[i] = flags_[i] ? 255 : 0;
  return out;
}

StrokeMap StrokeMap::Blank(int width, int height) {
  return StrokeMap(Image(width, height, 1, kBackground));
}

StrokeMap StrokeMap::FromImage(Image image) {
  if (image.channels() != 1) {
    throw Error(ErrorCode::kInvalidArgument, "stroke map must be 1-channel");
  }
  for (std::uint8_t v : image.pixels()) {
    if (v != kStroke && v != kBackground) {
      throw Error(ErrorCode::kInvalidArgument,
                  "stroke map value " + std::to_string(v) + " not in {0,255}");
    }
  }
  return StrokeMap(std::move(image));
}

std::size_t StrokeMap::StrokeCount() const {
  auto px = image_.pixels();
  return static_cast<std::size_t>(std::count(px.begin(), px.end(), kStroke));
}

}  // namespace sketchforge
