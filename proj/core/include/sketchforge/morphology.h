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

#ifndef SKETCHFORGE_MORPHOLOGY_H_
#define SKETCHFORGE_MORPHOLOGY_H_

#include <cstdint>
#include <span>

#include "sketchforge/raster.h"

namespace sketchforge {

// Grayscale dilation / erosion with a (2*radius+1)^2 square structuring
// element. Pixels beyond the border replicate the nearest edge pixel.
Image Dilate(const Image& gray, int radius);
Image Erode(const Image& gray, int radius);

// Dilation minus erosion. Zero exactly where the window is constant.
Image MorphGradient(const Image& gray, int radius = 1);

// Otsu's threshold over 8-bit values: values <= the result form the lower
// class. When every value is equal the result is that value, so no value
// lies strictly above it.
int OtsuThreshold(std::span<const std::uint8_t> values);

}  // namespace sketchforge

#endif  // SKETCHFORGE_MORPHOLOGY_H_
