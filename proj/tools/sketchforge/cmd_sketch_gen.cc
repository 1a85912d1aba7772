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

#include <filesystem>
#include <optional>
#include <set>
#include <sstream>

#include "commands.h"
#include "run_manifest.h"
#include "sketchforge/error.h"
#include "sketchforge/image_io.h"
#include "sketchforge/jsonl.h"
#include "sketchforge/parallel.h"
#include "sketchforge/sketch_pipeline.h"

namespace sketchforge::cli {
namespace fs = std::filesystem;
namespace {

struct Skip {
  std::string image_id;
  std::size_t annotation = 0;
  std::string reason;
};

struct ImageResult {
  std::vector<SketchRecord> records;
  std::vector<Skip> skips;
};

SketchOptions ReadOptions(const RunConfig& config) {
  SketchOptions o;
  const std::string kind = config.GetString("stylizer", "xdog");
  if (kind == "xdog") {
    o.stylizer.kind = StylizerKind::kNativeXDoG;
  } else if (kind == "external") {
    o.stylizer.kind = StylizerKind::kExternalRasterDir;
    o.stylizer.external_dir = config.InputPath("external_dir");
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "sketch_gen.stylizer must be \"xdog\" or \"external\"");
  }
  o.stylizer.sigma = config.GetDouble("sigma", o.stylizer.sigma);
  o.stylizer.k = config.GetDouble("k", o.stylizer.k);
  o.stylizer.epsilon = config.GetDouble("epsilon", o.stylizer.epsilon);
  o.stylizer.Validate();
  o.gradient_radius =
      static_cast<int>(config.GetInt("gradient_radius", o.gradient_radius));
  if (o.gradient_radius < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "sketch_gen.gradient_radius must be >= 1");
  }
  o.canvas = static_cast<int>(config.GetInt("canvas", kDefaultCanvas));
  if (o.canvas < kMinCanvas) {
    throw Error(ErrorCode::kInvalidArgument,
                "sketch_gen.canvas must be >= " + std::to_string(kMinCanvas));
  }
  const std::string source = config.GetString("source", "SketchVCL-O365");
  const auto parsed = SketchSourceFromName(source);
  if (!parsed) {
    throw Error(ErrorCode::kInvalidArgument,
                "sketch_gen.source: unknown sketch source " + source);
  }
  o.source = *parsed;
  return o;
}

}  // namespace

int RunSketchGen(const RunConfig& config) {
  const fs::path manifest_path = config.InputPath("manifest");
  const fs::path masks_dir = config.InputPath("masks_dir");
  const fs::path images_dir = config.Has("images_dir")
                                  ? config.InputPath("images_dir")
                                  : manifest_path.parent_path();
  const SketchOptions options = ReadOptions(config);
  std::optional<std::set<int>> classes;
  if (config.Has("classes")) {
    classes = config.section()["classes"].get<std::set<int>>();
  }

  const ImageManifest manifest = LoadImageManifest(manifest_path);
  const fs::path out_dir = config.OutputDir();
  RunManifest run(config, out_dir);
  run.AddInput("manifest", manifest_path);
  const fs::path sketch_dir = out_dir / "sketches";
  fs::create_directories(sketch_dir);

  std::vector<ImageResult> results(manifest.images.size());
  ParallelFor(manifest.images.size(), config.workers(), [&](std::size_t i) {
    const ImageRecord& image = manifest.images[i];
    ImageResult& out = results[i];
    std::optional<Image> photo;
    for (std::size_t a = 0; a < image.annotations.size(); ++a) {
      if (classes && !classes->count(image.annotations[a].class_id)) continue;
      const std::string id = InstanceSketchId(image, a);
      const fs::path mask_path = masks_dir / (id + ".png");
      if (!fs::exists(mask_path)) {
        out.skips.push_back({image.id, a, "missing_mask"});
        continue;
      }
      try {
        if (!photo) {
          fs::path p(image.path);
          photo = ReadImage(p.is_absolute() ? p : images_dir / p);
        }
        const MaskRaster mask = MaskRaster::FromImage(ReadImage(mask_path));
        InstanceSketch sketch =
            GenerateInstanceSketch(*photo, image, a, mask, options);
        const std::string rel = "sketches/" + sketch.record.id + ".png";
        WriteImage(out_dir / rel, sketch.raster.image());
        sketch.record.path = rel;
        out.records.push_back(std::move(sketch.record));
      } catch (const Error& e) {
        out.skips.push_back({image.id, a, std::string(ErrorCodeName(e.code()))});
      }
    }
  });

  std::vector<SketchRecord> records;
  std::ostringstream skips_csv;
  skips_csv << "image_id,annotation,reason\n";
  std::map<std::string, std::size_t> skip_counts;
  for (const ImageResult& r : results) {
    records.insert(records.end(), r.records.begin(), r.records.end());
    for (const Skip& s : r.skips) {
      skips_csv << s.image_id << ',' << s.annotation << ',' << s.reason << '\n';
      ++skip_counts[s.reason];
    }
  }
  run.WriteOutput("sketches.jsonl", ToJsonl(records, OutputHeader(config)));
  run.WriteOutput("skipped.csv", skips_csv.str());
  run.AddOutputTree("sketches", sketch_dir);
  run.summary()["sketches"] = records.size();
  run.summary()["skipped"] = skip_counts;
  run.Write();
  return kExitOk;
}

}  // namespace sketchforge::cli
