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

#include <map>
#include <set>

#include "commands.h"
#include "run_manifest.h"
#include "sketchforge/error.h"
#include "sketchforge/jsonl.h"
#include "sketchforge/sbir.h"

namespace sketchforge::cli {
namespace fs = std::filesystem;
namespace {

// Class -> detection mAP, from a JSON object keyed by class id.
std::map<int, double> LoadClassScores(const fs::path& path) {
  std::map<int, double> scores;
  try {
    const nlohmann::json j = nlohmann::json::parse(ReadTextFile(path));
    for (const auto& [key, value] : j.items()) {
      std::size_t used = 0;
      const int cls = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
      scores[cls] = value.get<double>();
    }
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
  return scores;
}

}  // namespace

int RunGalleryBuild(const RunConfig& config) {
  const fs::path map_path = config.InputPath("class_map");
  const fs::path images_path = config.InputPath("images");
  const fs::path sketches_path = config.InputPath("sketches");
  const int n_classes = static_cast<int>(config.GetInt("classes", kGalleryClasses));
  const int per_class = static_cast<int>(config.GetInt("per_class", kPerClass));

  const ImageManifest manifest = LoadImageManifest(images_path);
  std::vector<LabeledItem> images;
  std::map<std::string, std::string> image_paths;
  std::size_t multi_class = 0;
  for (const ImageRecord& r : manifest.images) {
    std::set<int> classes;
    for (const Annotation& a : r.annotations) classes.insert(a.class_id);
    if (classes.size() != 1) {
      ++multi_class;
      continue;
    }
    images.push_back({r.id, *classes.begin()});
    image_paths[r.id] = r.path;
  }
  std::vector<LabeledItem> sketches;
  std::map<std::string, std::string> sketch_paths;
  for (const SketchRecord& s : LoadSketches(sketches_path)) {
    sketches.push_back({s.id, s.class_id});
    sketch_paths[s.id] = s.path;
  }

  const GallerySpec gallery =
      BuildSbirGallery(LoadClassScores(map_path), images, sketches,
                       config.seed(), n_classes, per_class);

  // Every (query, gallery) pair needs one forward pass.
  std::string pairs;
  {
    nlohmann::json header;
    header[std::string(kHeaderKey)] = OutputHeader(config);
    pairs += header.dump() + "\n";
  }
  for (const LabeledItem& q : gallery.queries) {
    for (const LabeledItem& g : gallery.gallery) {
      pairs += nlohmann::json{{"query_id", q.id},
                              {"gallery_id", g.id},
                              {"sketch_path", sketch_paths[q.id]},
                              {"image_path", image_paths[g.id]}}
                   .dump() +
               "\n";
    }
  }

  RunManifest run(config, config.OutputDir());
  run.AddInput("class_map", map_path);
  run.AddInput("images", images_path);
  run.AddInput("sketches", sketches_path);
  run.WriteOutput("gallery.json", nlohmann::json(gallery).dump(2) + "\n");
  run.WriteOutput("pairs.jsonl", pairs);
  run.summary() = {{"classes", gallery.classes.size()},
                   {"gallery", gallery.gallery.size()},
                   {"queries", gallery.queries.size()},
                   {"pairs", gallery.gallery.size() * gallery.queries.size()},
                   {"multi_class_images_skipped", multi_class}};
  run.Write();
  return kExitOk;
}

}  // namespace sketchforge::cli
