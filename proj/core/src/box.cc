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

#include "sketchforge/box.h"

#include <sstream>

#include "sketchforge/error.h"

namespace sketchforge {
namespace {

std::string Describe(double x1, double y1, double x2, double y2) {
  std::ostringstream out;
  out << "[" << x1 << ", " << y1 << ", " << x2 << ", " << y2 << "]";
  return out.str();
}

}  // namespace

bool BoundingBox::IsValid() const {
  return 0.0 <= x1 && x1 < x2 && x2 <= 1.0 && 0.0 <= y1 && y1 < y2 &&
         y2 <= 1.0;
}

BoundingBox MakeBox(double x1, double y1, double x2, double y2) {
  BoundingBox box{x1, y1, x2, y2};
  if (!box.IsValid()) {
    throw Error(ErrorCode::kInvalidArgument,
                "not a normalized box: " + Describe(x1, y1, x2, y2));
  }
  return box;
}

BoundingBox NormalizeBox(const PixelBox& box, int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidArgument, "image dimensions must be >= 1");
  }
  if (box.x1 == box.x2 || box.y1 == box.y2) {
    throw Error(ErrorCode::kDegenerateGeometry,
                "zero-extent box " + Describe(box.x1, box.y1, box.x2, box.y2));
  }
  if (!(0.0 <= box.x1 && box.x1 < box.x2 && box.x2 <= width &&
        0.0 <= box.y1 && box.y1 < box.y2 && box.y2 <= height)) {
    throw Error(ErrorCode::kInvalidArgument,
                "box " + Describe(box.x1, box.y1, box.x2, box.y2) +
                    " outside image");
  }
  const double w = width;
  const double h = height;
  return BoundingBox{box.x1 / w, box.y1 / h, box.x2 / w, box.y2 / h};
}

PixelBox DenormalizeBox(const BoundingBox& box, int width, int height) {
  const double w = width;
  const double h = height;
  return PixelBox{box.x1 * w, box.y1 * h, box.x2 * w, box.y2 * h};
}

}  // namespace sketchforge
