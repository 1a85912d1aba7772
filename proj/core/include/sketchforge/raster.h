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

#ifndef SKETCHFORGE_RASTER_H_
#define SKETCHFORGE_RASTER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sketchforge/box.h"

namespace sketchforge {

// 8-bit interleaved raster with 1 or 3 channels.
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels, std::uint8_t fill = 0);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  ImageSize size() const { return {width_, height_}; }
  bool empty() const { return pixels_.empty(); }

  std::uint8_t& at(int x, int y, int c = 0) {
    return pixels_[Offset(x, y, c)];
  }
  std::uint8_t at(int x, int y, int c = 0) const {
    return pixels_[Offset(x, y, c)];
  }

  std::span<std::uint8_t> pixels() { return pixels_; }
  std::span<const std::uint8_t> pixels() const { return pixels_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t Offset(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// Binary instance mask with at least one foreground pixel.
class MaskRaster {
 public:
  // Throws Error(kEmptyMask) when no flag is set and kInvalidArgument when
  // flags.size() != width * height.
  MaskRaster(int width, int height, std::vector<std::uint8_t> flags);

  // Nonzero pixels of a single-channel raster are foreground.
  static MaskRaster FromImage(const Image& image);

  int width() const { return width_; }
  int height() const { return height_; }
  ImageSize size() const { return {width_, height_}; }
  bool at(int x, int y) const {
    return flags_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  std::size_t ForegroundCount() const;

  // Foreground as a 0/255 single-channel raster.
  Image ToImage() const;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> flags_;
};

// Strictly binary sketch raster: 0 is stroke, 255 is background.
class StrokeMap {
 public:
  static constexpr std::uint8_t kStroke = 0;
  static constexpr std::uint8_t kBackground = 255;

  StrokeMap() = default;

  static StrokeMap Blank(int width, int height);
  // Throws Error(kInvalidArgument) unless the raster is single-channel with
  // values in {0, 255}.
  static StrokeMap FromImage(Image image);

  int width() const { return image_.width(); }
  int height() const { return image_.height(); }
  ImageSize size() const { return image_.size(); }

  bool IsStroke(int x, int y) const { return image_.at(x, y) == kStroke; }
  void SetStroke(int x, int y) { image_.at(x, y) = kStroke; }
  std::size_t StrokeCount() const;

  const Image& image() const { return image_; }

  friend bool operator==(const StrokeMap&, const StrokeMap&) = default;

 private:
  explicit StrokeMap(Image image) : image_(std::move(image)) {}

  Image image_;
};

}  // namespace sketchforge

#endif  // SKETCHFORGE_RASTER_H_
