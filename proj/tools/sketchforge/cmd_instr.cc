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
#include "run_manifest.h"
#include "sketchforge/error.h"
#include "sketchforge/instruction_builder.h"
#include "sketchforge/jsonl.h"
#include "sketchforge/prompt_pool.h"

namespace sketchforge::cli {
namespace fs = std::filesystem;
namespace {

std::vector<QaItem> LoadQa(const fs::path& path) {
  std::vector<QaItem> items;
  for (const nlohmann::json& j : ReadJsonlObjects(path)) {
    try {
      QaItem item;
      item.image_id = j.at("image_id").get<std::string>();
      item.rounds = j.at("rounds").get<std::vector<Round>>();
      if (j.contains("class_id") && !j["class_id"].is_null()) {
        item.class_id = j["class_id"].get<int>();
      }
      items.push_back(std::move(item));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
    }
  }
  return items;
}

std::map<std::pair<std::string, int>, std::int64_t> LoadCounts(
    const fs::path& path) {
  std::map<std::pair<std::string, int>, std::int64_t> counts;
  for (const nlohmann::json& j : ReadJsonlObjects(path)) {
    try {
      counts[{j.at("image_id").get<std::string>(),
              j.at("class_id").get<int>()}] = j.at("count").get<std::int64_t>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
    }
  }
  return counts;
}

CompositionSpec ReadSpec(const RunConfig& config) {
  CompositionSpec spec = CompositionSpec::Scaled(config.GetDouble("scale", 1.0));
  auto size = [&](const char* key, std::size_t fallback) {
    const std::int64_t v =
        config.GetInt(key, static_cast<std::int64_t>(fallback));
    if (v < 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("instr_build.") + key + " must be >= 0");
    }
    return static_cast<std::size_t>(v);
  };
  spec.detect_n = size("detect_n", spec.detect_n);
  spec.vqa_n = size("vqa_n", spec.vqa_n);
  spec.count_n = size("count_n", spec.count_n);
  spec.sbir_n = size("sbir_n", spec.sbir_n);
  spec.vqa_sketch_fraction =
      config.GetDouble("vqa_sketch_fraction", spec.vqa_sketch_fraction);
  spec.sbir_positive_fraction =
      config.GetDouble("sbir_positive_fraction", spec.sbir_positive_fraction);
  spec.Validate();
  return spec;
}

}  // namespace

int RunInstrBuild(const RunConfig& config) {
  const CompositionSpec spec = ReadSpec(config);
  const fs::path sketches_path = config.InputPath("sketches");
  const std::vector<SketchRecord> sketch_list = LoadSketches(sketches_path);
  const SketchPool pool = MakeSketchPool(sketch_list);
  PromptPool prompts = PromptPool::Default();
  if (auto p = config.OptionalInputPath("prompts")) prompts = PromptPool::Load(*p);
  prompts.Validate();

  RunManifest run(config, config.OutputDir());
  run.AddInput("sketches", sketches_path);
  auto images = [&](const char* key) {
    std::vector<ImageRecord> out;
    if (auto p = config.OptionalInputPath(key)) {
      run.AddInput(key, *p);
      out = LoadImageManifest(*p).images;
    }
    return out;
  };
  const auto detection = images("detection_manifest");
  const auto counting = images("counting_manifest");
  const auto sbir = images("sbir_manifest");
  std::vector<QaItem> qa;
  if (auto p = config.OptionalInputPath("qa")) {
    run.AddInput("qa", *p);
    qa = LoadQa(*p);
  }

  CorpusSources sources;
  sources.detection_images = detection;
  sources.counting_images = counting;
  sources.sbir_images = sbir;
  sources.qa_items = qa;
  sources.sketches = &pool;
  if (auto p = config.OptionalInputPath("counts")) {
    run.AddInput("counts", *p);
    sources.counts = LoadCounts(*p);
  }

  const Corpus corpus = BuildFinetuneCorpus(spec, sources, prompts,
                                            config.seed(), config.workers());
  const bool partial = corpus.report.partial();
  if (partial) run.MarkPartial();
  run.WriteOutput("instructions.jsonl",
                  ToJsonl(corpus.samples, OutputHeader(config)), partial);
  run.WriteOutput("composition.csv", corpus.report.ToCsv(), partial);
  nlohmann::json realized = nlohmann::json::object();
  nlohmann::json shortfall = nlohmann::json::object();
  for (TaskKind t : kAllTaskKinds) {
    const std::string name(TaskDescriptor(t));
    auto it = corpus.report.realized.find(t);
    realized[name] = it == corpus.report.realized.end() ? 0 : it->second;
    shortfall[name] = corpus.report.Shortfall(t);
  }
  run.summary() = {{"samples", corpus.samples.size()},
                   {"realized", realized},
                   {"shortfall", shortfall},
                   {"vqa_with_sketch", corpus.report.vqa_with_sketch},
                   {"sbir_positive", corpus.report.sbir_positive},
                   {"sbir_negative", corpus.report.sbir_negative}};
  run.Write();
  return partial ? kExitPartial : kExitOk;
}

}  // namespace sketchforge::cli
