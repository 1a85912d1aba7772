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

#include <algorithm>
#include <cctype>

#include "commands.h"
#include "run_manifest.h"
#include "sketchforge/error.h"
#include "sketchforge/jsonl.h"
#include "sketchforge/metric_report.h"
#include "sketchforge/scoring.h"

namespace sketchforge::cli {
namespace fs = std::filesystem;
namespace {

TaskKind ParseTask(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (name == "DETECT" || name == "DETECTION") name = "BBOX";
  if (name == "COUNTING") name = "COUNT";
  const auto task = TaskKindFromDescriptor(name);
  if (!task) {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown task '" + name + "' (count, bbox, vqa, sbir)");
  }
  return *task;
}

std::string HeadlineMetric(TaskKind task) {
  switch (task) {
    case TaskKind::kCount:
    case TaskKind::kDetect:
      return "Acc";
    case TaskKind::kVqa:
      return "Answered";
    case TaskKind::kSbir:
      return "Acc@1";
  }
  return "Acc";
}

nlohmann::json Overall(const MetricReport& report) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, value] : report.overall) j[name] = value;
  return j;
}

}  // namespace

int RunScore(const RunConfig& config) {
  const TaskKind task = ParseTask(config.GetString("task"));
  RunManifest run(config, config.OutputDir());

  ScoringContext ctx;
  ctx.label = config.GetString("label", "model");
  ctx.dataset = config.GetString("dataset", "");
  ctx.macro = config.GetBool("macro", false);
  if (auto p = config.OptionalInputPath("sketches")) {
    run.AddInput("sketches", *p);
    for (SketchRecord& s : LoadSketches(*p)) {
      const std::string id = s.id;
      ctx.sketches.emplace(id, std::move(s));
    }
  }
  if (auto p = config.OptionalInputPath("image_manifest")) {
    run.AddInput("image_manifest", *p);
    for (const ImageRecord& r : LoadImageManifest(*p).images) {
      ctx.image_sizes[r.id] = r.size();
    }
  }

  MetricReport report;
  if (task == TaskKind::kSbir) {
    const fs::path gallery_path = config.InputPath("gallery");
    const fs::path scores_path = config.InputPath("scores");
    run.AddInput("gallery", gallery_path);
    run.AddInput("scores", scores_path);
    GallerySpec gallery;
    try {
      gallery = nlohmann::json::parse(ReadTextFile(gallery_path))
                    .get<GallerySpec>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, gallery_path.string() + ": " + e.what());
    }
    std::vector<std::size_t> ks = {1, 5, 10};
    if (config.Has("ks")) {
      ks = config.section()["ks"].get<std::vector<std::size_t>>();
    }
    report = ScoreSbir(gallery, LoadScoreMatrix(scores_path, gallery), ctx, ks);
  } else {
    const fs::path gt_path = config.InputPath("ground_truth");
    const fs::path pred_path = config.InputPath("predictions");
    run.AddInput("ground_truth", gt_path);
    run.AddInput("predictions", pred_path);
    const auto gt = ReadJsonl<InstructionSample>(gt_path);
    const auto preds = ReadJsonl<PredictionRecord>(pred_path);
    switch (task) {
      case TaskKind::kCount:
        report = ScoreCounting(gt, preds, ctx);
        break;
      case TaskKind::kDetect:
        report = ScoreDetection(gt, preds, ctx);
        break;
      default:
        report = ScoreVqa(gt, preds, ctx);
        break;
    }
  }

  const ReportTables tables =
      EmitReport(std::span<const MetricReport>(&report, 1),
                 config.GetString("metric", HeadlineMetric(task)));
  run.WriteOutput("report.json", nlohmann::json(report).dump(2) + "\n");
  run.WriteOutput("report.csv", MetricReportCsv(report));
  run.WriteOutput("table.md", tables.markdown);
  run.summary() = {{"task", TaskDescriptor(task)},
                   {"samples", report.samples},
                   {"missing", report.missing},
                   {"unparseable", report.unparseable},
                   {"dropped_boxes", report.dropped_boxes},
                   {"overall", Overall(report)}};
  run.Write();
  return kExitOk;
}

int RunReport(const RunConfig& config) {
  const nlohmann::json& list = config.section()["reports"];
  if (!list.is_array() || list.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "report.reports must be a non-empty list of report.json paths");
  }
  RunManifest run(config, config.OutputDir());
  std::vector<MetricReport> reports;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const fs::path p = config.Resolve(list[i].get<std::string>());
    if (!fs::exists(p)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "report.reports: " + p.string() + " does not exist");
    }
    run.AddInput("reports[" + std::to_string(i) + "]", p);
    try {
      reports.push_back(
          nlohmann::json::parse(ReadTextFile(p)).get<MetricReport>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, p.string() + ": " + e.what());
    }
  }
  const std::string metric =
      config.GetString("metric", HeadlineMetric(reports.front().task));
  const ReportTables tables = EmitReport(reports, metric);
  run.WriteOutput("table.csv", tables.csv);
  run.WriteOutput("table.md", tables.markdown);
  run.summary() = {{"reports", reports.size()}, {"metric", metric}};
  run.Write();
  return kExitOk;
}

}  // namespace sketchforge::cli
