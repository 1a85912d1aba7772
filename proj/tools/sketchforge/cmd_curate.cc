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
#include <sstream>

#include "commands.h"
#include "run_manifest.h"
#include "sketchforge/error.h"
#include "sketchforge/instruction_builder.h"
#include "sketchforge/jsonl.h"
#include "sketchforge/pretrain.h"
#include "sketchforge/prompt_pool.h"
#include "sketchforge/random.h"

namespace sketchforge::cli {
namespace {

constexpr std::uint64_t kComposeStream = 0x70726574;  // per-pick streams

std::map<std::string, std::string> LoadCaptions(
    const std::filesystem::path& path) {
  std::map<std::string, std::string> captions;
  for (const nlohmann::json& j : ReadJsonlObjects(path)) {
    try {
      captions[j.at("image_id").get<std::string>()] =
          j.at("caption").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
    }
  }
  return captions;
}

std::size_t NonNegative(const RunConfig& config, const std::string& key) {
  const std::int64_t v = config.GetInt(key, -1);
  if (v < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "curate_pretrain." + key + " must be a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

int RunCuratePretrain(const RunConfig& config) {
  const auto manifest_path = config.InputPath("manifest");
  const auto captions_path = config.InputPath("captions");
  const auto sketches_path = config.InputPath("sketches");
  const std::size_t n_head = NonNegative(config, "n_head");
  const std::size_t n_tail = NonNegative(config, "n_tail");
  const std::int64_t threshold =
      config.GetInt("tail_threshold", kDefaultTailThreshold);
  if (threshold < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "curate_pretrain.tail_threshold must be >= 1");
  }

  ImageManifest manifest = LoadImageManifest(manifest_path);
  if (auto names = config.OptionalInputPath("class_names")) {
    manifest.class_names = LoadNameList(*names);
  }
  if (manifest.class_names.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "curate_pretrain.class_names is required for JSONL manifests");
  }
  const int num_classes = static_cast<int>(manifest.class_names.size());
  for (const ImageRecord& r : manifest.images) ValidateImageRecord(r, num_classes);
  const auto captions = LoadCaptions(captions_path);
  const std::vector<SketchRecord> sketch_list = LoadSketches(sketches_path);
  const SketchPool sketches = MakeSketchPool(sketch_list);
  PromptPool prompts = PromptPool::Default();
  if (auto p = config.OptionalInputPath("prompts")) prompts = PromptPool::Load(*p);
  prompts.Validate();

  const ClassHistogram histogram = BuildClassHistogram(manifest.images);
  const PretrainSelection selection = SamplePretrainSet(
      manifest.images, histogram, n_head, n_tail, threshold, config.seed());

  std::map<std::string, const ImageRecord*> by_id;
  for (const ImageRecord& r : manifest.images) by_id[r.id] = &r;

  std::vector<InstructionSample> samples;
  std::ostringstream picks_csv;
  picks_csv << "sample_id,image_id,target_class,tail,status\n";
  std::size_t missing_caption = 0;
  std::size_t missing_sketch = 0;
  for (std::size_t i = 0; i < selection.picks.size(); ++i) {
    const PretrainPick& pick = selection.picks[i];
    char id[32];
    std::snprintf(id, sizeof(id), "pretrain-%06zu", i);
    std::string status = "ok";
    auto caption = captions.find(pick.image_id);
    auto pool = sketches.find(pick.target_class);
    if (caption == captions.end() || caption->second.empty()) {
      status = "missing_caption";
      ++missing_caption;
    } else if (pool == sketches.end() || pool->second.empty()) {
      status = "missing_sketch";
      ++missing_sketch;
    } else {
      Rng rng(DeriveSeed(config.seed(), {kComposeStream, i}));
      const SketchRecord& sketch =
          pool->second[UniformIndex(rng, pool->second.size())];
      std::vector<BoundingBox> boxes;
      for (const Annotation& a : by_id.at(pick.image_id)->annotations) {
        if (a.class_id == pick.target_class) boxes.push_back(a.box);
      }
      PretrainContext ctx{id, pick.image_id, sketch.id, pick.target_class};
      samples.push_back(ComposePretrainSample(
          caption->second, manifest.class_names[pick.target_class], boxes,
          ctx, prompts, rng));
    }
    picks_csv << id << ',' << pick.image_id << ',' << pick.target_class << ','
              << (pick.tail ? 1 : 0) << ',' << status << '\n';
  }

  std::ostringstream hist_csv;
  const std::set<int> tail = IdentifyTailClasses(histogram, threshold);
  hist_csv << "class_id,count,tail,picked\n";
  for (const auto& [cls, count] : histogram.counts()) {
    auto it = selection.tail_per_class.find(cls);
    hist_csv << cls << ',' << count << ',' << (tail.count(cls) ? 1 : 0) << ','
             << (it == selection.tail_per_class.end() ? 0 : it->second)
             << '\n';
  }

  RunManifest run(config, config.OutputDir());
  run.AddInput("manifest", manifest_path);
  run.AddInput("captions", captions_path);
  run.AddInput("sketches", sketches_path);
  const bool partial =
      selection.partial() || missing_caption > 0 || missing_sketch > 0;
  if (partial) run.MarkPartial();
  run.WriteOutput("pretrain.jsonl", ToJsonl(samples, OutputHeader(config)),
                  partial);
  run.WriteOutput("selection.csv", picks_csv.str(), partial);
  run.WriteOutput("class_histogram.csv", hist_csv.str());
  run.summary() = {{"samples", samples.size()},
                   {"head_shortfall", selection.head_shortfall},
                   {"tail_shortfall", selection.tail_shortfall},
                   {"tail_classes", tail.size()},
                   {"missing_caption", missing_caption},
                   {"missing_sketch", missing_sketch}};
  run.Write();
  return partial ? kExitPartial : kExitOk;
}

}  // namespace sketchforge::cli
