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

// Instance-level sketch generation: mask the background, stylize the
// foreground, extract morphological edges, add the mask silhouette, and
// render everything onto a fixed square canvas.

#ifndef SKETCHFORGE_SKETCH_PIPELINE_H_
#define SKETCHFORGE_SKETCH_PIPELINE_H_

#include <string>

#include "sketchforge/raster.h"
#include "sketchforge/records.h"
#include "sketchforge/xdog.h"

namespace sketchforge {

inline constexpr int kDefaultCanvas = 512;
inline constexpr int kMinCanvas = 64;

// Pixels outside the mask become pure white; inside pixels are unchanged.
Image MaskForeground(const Image& image, const MaskRaster& mask);

// Rec.601 luma, rounded. Single-channel input is returned as is.
Image ToGrayscale(const Image& image);

// Pixelwise stroke union. Throws kGeometryMismatch on size mismatch.
StrokeMap AggregateStrokes(const StrokeMap& a, const StrokeMap& b);

// Crops to the stroke bounding box plus a 4% margin, fits it into a
// target x target white canvas preserving aspect ratio, and re-binarizes at
// 128. Throws kEmptySketch for a blank map.
StrokeMap RenderCanvas(const StrokeMap& strokes, int target = kDefaultCanvas);

struct SketchOptions {
  StylizerSpec stylizer;
  int gradient_radius = 1;
  int canvas = kDefaultCanvas;
  SketchSource source = SketchSource::kExternal;
};

struct InstanceSketch {
  SketchRecord record;
  StrokeMap raster;
};

// Runs the full pipeline for one annotated instance. The sketch id is
// "<image id>_<annotation index>". For ExternalRasterDir stylizers the
// stylization is read from "<external_dir>/<sketch id>.png".
//
// Throws kGeometryMismatch when the photo or mask size differs from the
// record, kInvalidArgument when the mask strays outside the annotation box
// grown by 10% per side, and kEmptySketch when no stroke survives.
InstanceSketch GenerateInstanceSketch(const Image& photo,
                                      const ImageRecord& image,
                                      std::size_t annotation_index,
                                      const MaskRaster& mask,
                                      const SketchOptions& options);

std::string InstanceSketchId(const ImageRecord& image,
                             std::size_t annotation_index);

}  // namespace sketchforge

#endif  // SKETCHFORGE_SKETCH_PIPELINE_H_
