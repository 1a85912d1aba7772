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

#ifndef SKETCHFORGE_IMAGE_IO_H_
#define SKETCHFORGE_IMAGE_IO_H_

#include <filesystem>

#include "sketchforge/raster.h"

namespace sketchforge {

// Reads PNG (.png) or binary Netpbm (.pgm/.ppm). Gray stays single-channel;
// anything with color becomes 3-channel RGB. Alpha is dropped.
Image ReadImage(const std::filesystem::path& path);

// Writes single- or 3-channel rasters as PNG or Netpbm, chosen by extension.
void WriteImage(const std::filesystem::path& path, const Image& image);

}  // namespace sketchforge

#endif  // SKETCHFORGE_IMAGE_IO_H_
