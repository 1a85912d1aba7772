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

#ifndef SKETCHFORGE_XDOG_H_
#define SKETCHFORGE_XDOG_H_

#include <filesystem>
#include <vector>

#include "sketchforge/raster.h"

namespace sketchforge {

enum class StylizerKind {
  kNativeXDoG,
  // Pre-rendered stylizations read from a directory, one per instance.
  kExternalRasterDir,
};

struct StylizerSpec {
  StylizerKind kind = StylizerKind::kNativeXDoG;
  double sigma = 1.0;
  double k = 1.6;
  double epsilon = 0.1;
  std::filesystem::path external_dir;

  // Throws Error(kInvalidArgument) for sigma <= 0 or k <= 1.
  void Validate() const;
  // Support radius of the wider Gaussian, ceil(3 * k * sigma).
  int SupportRadius() const;
};

// Normalized 1-D Gaussian taps, radius ceil(3 * sigma).
std::vector<double> GaussianKernel(double sigma);

// Separable Gaussian blur with edge replication, on a row-major plane.
std::vector<double> GaussianBlur(const std::vector<double>& plane, int width,
                                 int height, double sigma);

// (G_sigma - G_{k sigma}) / 255 per pixel, in [-1, 1].
std::vector<double> DogResponse(const Image& gray, const StylizerSpec& spec);

// Pixels whose response is below -epsilon become strokes.
StrokeMap XDoGStylize(const Image& gray, const StylizerSpec& spec);

}  // namespace sketchforge

#endif  // SKETCHFORGE_XDOG_H_
