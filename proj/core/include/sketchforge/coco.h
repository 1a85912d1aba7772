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

#ifndef SKETCHFORGE_COCO_H_
#define SKETCHFORGE_COCO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "sketchforge/records.h"
#include "sketchforge/taxonomy.h"

namespace sketchforge {

struct CocoDataset {
  std::vector<ImageRecord> images;
  std::vector<std::string> class_names;  // indexed by class_id
  std::size_t skipped_annotations = 0;   // crowd, degenerate or unmapped
};

// Reads a COCO-style detection file (images / annotations / categories).
// Without a taxonomy, class ids are category positions in ascending
// category-id order. With one, categories map to parents by
// case-insensitive name and unmatched categories are skipped. Boxes are
// clipped to the image and normalized; area_px is the clipped box area.
CocoDataset ReadCocoDetection(const std::filesystem::path& path,
                              const Taxonomy* taxonomy = nullptr);

}  // namespace sketchforge

#endif  // SKETCHFORGE_COCO_H_
