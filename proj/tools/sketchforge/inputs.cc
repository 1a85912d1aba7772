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

#include "commands.h"

#include "sketchforge/coco.h"
#include "sketchforge/jsonl.h"

namespace sketchforge::cli {

ImageManifest LoadImageManifest(const std::filesystem::path& path,
                                const Taxonomy* taxonomy) {
  ImageManifest m;
  if (path.extension() == ".json") {
    CocoDataset coco = ReadCocoDetection(path, taxonomy);
    m.images = std::move(coco.images);
    m.class_names = std::move(coco.class_names);
  } else {
    m.images = ReadJsonl<ImageRecord>(path);
  }
  return m;
}

std::vector<SketchRecord> LoadSketches(const std::filesystem::path& path) {
  return ReadJsonl<SketchRecord>(path);
}

std::vector<std::string> LoadNameList(const std::filesystem::path& path) {
  return LoadTaxonomy(path).parent_classes;
}

}  // namespace sketchforge::cli
