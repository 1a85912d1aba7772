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

#ifndef SKETCHFORGE_BOX_H_
#define SKETCHFORGE_BOX_H_

namespace sketchforge {

// Axis-aligned box in normalized image coordinates, 0 <= x1 < x2 <= 1 and
// 0 <= y1 < y2 <= 1.
struct BoundingBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  double Width() const { return x2 - x1; }
  double Height() const { return y2 - y1; }
  double Area() const { return Width() * Height(); }
  bool IsValid() const;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

// Same layout in absolute pixel units.
struct PixelBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  double Area() const { return (x2 - x1) * (y2 - y1); }

  friend bool operator==(const PixelBox&, const PixelBox&) = default;
};

struct ImageSize {
  int width = 0;
  int height = 0;

  friend bool operator==(const ImageSize&, const ImageSize&) = default;
};

// Throws Error(kInvalidArgument) when the box is not a valid normalized box.
BoundingBox MakeBox(double x1, double y1, double x2, double y2);

// Divides each coordinate by the matching image dimension. Throws
// kDegenerateGeometry for zero-width or zero-height boxes and
// kInvalidArgument for boxes outside the image.
BoundingBox NormalizeBox(const PixelBox& box, int width, int height);

PixelBox DenormalizeBox(const BoundingBox& box, int width, int height);

}  // namespace sketchforge

#endif  // SKETCHFORGE_BOX_H_
