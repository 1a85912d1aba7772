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

#include <sstream>

#include <gtest/gtest.h>

#include "sketchforge/error.h"
#include "sketchforge/metric_report.h"
#include "sketchforge/scoring.h"

namespace sketchforge {
namespace {

MetricReport Report(const std::string& label,
                    std::vector<std::pair<std::string, double>> cells,
                    TaskKind task = TaskKind::kDetect) {
  MetricReport r;
  r.task = task;
  r.label = label;
  for (auto& [source, v] : cells) r.rows.push_back({source, {{"Acc", v}}, 10});
  return r;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) out.push_back(cell);
  return out;
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string l; std::getline(ss, l);) out.push_back(l);
  return out;
}

TEST(EmitReport, FourSourcesPlusAverage) {
  const std::vector<MetricReport> reports = {
      Report("model-a", {{"QuickDraw", 40}, {"SketchVCL-O365", 10},
                         {"Sketchy", 30}, {"SketchVCL-C", 20}}),
      Report("model-b", {{"SketchVCL-O365", 50}, {"Sketchy", 70}})};
  const ReportTables t = EmitReport(reports, "Acc");
  const auto lines = Lines(t.csv);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "Model,SketchVCL-O365,SketchVCL-C,Sketchy,QuickDraw,Avg.");
  EXPECT_EQ(lines[1], "model-a,10.0,20.0,30.0,40.0,25.0");
  EXPECT_EQ(lines[2], "model-b,50.0,-,70.0,-,60.0");
  EXPECT_EQ(SplitCsvLine(lines[0]).size(), 6u);
  const auto md = Lines(t.markdown);
  EXPECT_EQ(md[0], "**BBOX - Acc**");
  EXPECT_EQ(md.size(), 6u);
  EXPECT_NE(md[3].find("---:"), std::string::npos);
}

TEST(EmitReport, SingleSourceAndDatasets) {
  MetricReport a = Report("m", {{"SketchVCL-O365", 12.34}});
  a.dataset = "COCO";
  MetricReport b = Report("m", {{"SketchVCL-O365", 50}});
  b.dataset = "VOC";
  const std::vector<MetricReport> reports = {a, b};
  const auto lines = Lines(EmitReport(reports, "Acc").csv);
  EXPECT_EQ(lines[0],
            "Model,COCO/SketchVCL-O365,COCO/Avg.,VOC/SketchVCL-O365,VOC/Avg.");
  EXPECT_EQ(lines[1], "m,12.3,12.3,50.0,50.0");
}

TEST(EmitReport, OverallOnlyReportsUseAll) {
  MetricReport r;
  r.task = TaskKind::kCount;
  r.label = "m";
  r.rows.push_back({"All", {{"Acc", 66.666}}, 3});
  const std::vector<MetricReport> reports = {r};
  const auto lines = Lines(EmitReport(reports, "Acc").csv);
  EXPECT_EQ(lines[0], "Model,All,Avg.");
  EXPECT_EQ(lines[1], "m,66.7,66.7");
}

TEST(EmitReport, Errors) {
  const std::vector<MetricReport> none;
  try {
    EmitReport(none, "Acc");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  const std::vector<MetricReport> mixed = {
      Report("a", {{"Sketchy", 1}}), Report("b", {{"Sketchy", 1}}, TaskKind::kCount)};
  try {
    EmitReport(mixed, "Acc");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMixedTasks);
  }
}

TEST(MetricReport, JsonRoundTrip) {
  MetricReport r = Report("m", {{"Sketchy", 12.5}, {"QuickDraw", 3}});
  r.dataset = "COCO";
  r.overall = {{"Acc", 7.75}};
  r.samples = 20;
  r.unparseable = 2;
  r.missing = 1;
  r.dropped_boxes = 4;
  const nlohmann::json j = r;
  const MetricReport back = j.get<MetricReport>();
  EXPECT_EQ(back.label, "m");
  EXPECT_EQ(back.task, TaskKind::kDetect);
  EXPECT_EQ(back.rows.size(), 2u);
  EXPECT_EQ(back.Score("Sketchy", "Acc"), 12.5);
  EXPECT_EQ(back.Score("All", "Acc"), std::nullopt);
  EXPECT_EQ(back.dropped_boxes, 4u);
  EXPECT_NE(MetricReportCsv(r).find("task,label,dataset,sketch_source"),
            std::string::npos);
}

InstructionSample Gt(const std::string& id, TaskKind task,
                     const std::string& sketch, const std::string& response) {
  InstructionSample s;
  s.sample_id = id;
  s.task = task;
  s.image_id = "img-" + id;
  s.sketch_id = sketch;
  s.target_class = 0;
  s.rounds = {{std::string(TaskDescriptor(task)) + " <sketch> q", response}};
  return s;
}

TEST(Scoring, CountingBySource) {
  ScoringContext ctx;
  ctx.label = "m";
  ctx.sketches["a"] = {"a", 0, SketchSource::kSketchy, "", std::nullopt};
  ctx.sketches["b"] = {"b", 0, SketchSource::kQuickDraw, "", std::nullopt};
  const std::vector<InstructionSample> gt = {
      Gt("1", TaskKind::kCount, "a", "3"), Gt("2", TaskKind::kCount, "a", "5"),
      Gt("3", TaskKind::kCount, "b", "8"), Gt("4", TaskKind::kCount, "b", "2")};
  const std::vector<PredictionRecord> preds = {
      {"1", "There are 3.", {}, {}, {}},
      {"2", "5", {}, {}, {}},
      {"3", "seven", {}, {}, {}}};
  const MetricReport r = ScoreCounting(gt, preds, ctx);
  EXPECT_EQ(r.samples, 4u);
  EXPECT_EQ(r.missing, 1u);
  EXPECT_EQ(r.unparseable, 1u);
  EXPECT_DOUBLE_EQ(*r.Score("Sketchy", "Acc"), 100.0);
  EXPECT_DOUBLE_EQ(*r.Score("QuickDraw", "Acc"), 0.0);
  ASSERT_EQ(r.overall.size(), 1u);
  EXPECT_DOUBLE_EQ(r.overall[0].second, 50.0);
  const std::vector<PredictionRecord> dup = {preds[0], preds[0]};
  EXPECT_THROW(ScoreCounting(gt, dup, ctx), Error);
}

TEST(Scoring, DetectionAndScores) {
  ScoringContext ctx;
  ctx.image_sizes["img-1"] = {200, 100};
  const std::vector<InstructionSample> gt = {
      Gt("1", TaskKind::kDetect, "a", "[0.10, 0.10, 0.50, 0.90]"),
      Gt("2", TaskKind::kDetect, "a", "[0.50, 0.50, 0.90, 0.90]")};
  const std::vector<PredictionRecord> preds = {
      {"1", "at [20, 10, 100, 90]", {}, {}, {}},  // absolute pixels
      {"2", "nothing here", {}, {}, {}}};
  const MetricReport r = ScoreDetection(gt, preds, ctx);
  EXPECT_DOUBLE_EQ(*r.Score("All", "Acc"), 50.0);
  // One of two GTs found at precision 1: 51 of 101 recall points.
  EXPECT_NEAR(*r.Score("All", "mAP@0.5"), 100.0 * 51 / 101, 1e-9);
  EXPECT_EQ(r.unparseable, 1u);
}

TEST(Scoring, SbirPerfect) {
  GallerySpec g;
  ScoreMatrix m;
  for (int c = 0; c < 3; ++c) {
    g.classes.push_back(c);
    for (int i = 0; i < 2; ++i) {
      g.gallery.push_back({"g" + std::to_string(c * 2 + i), c});
      g.queries.push_back({"q" + std::to_string(c * 2 + i), c});
    }
  }
  for (const auto& q : g.queries) {
    m.emplace_back();
    for (const auto& item : g.gallery) {
      m.back().push_back(q.class_id == item.class_id ? 0.8 : 0.2);
    }
  }
  const std::size_t ks[] = {1, 2, 4};
  const MetricReport r = ScoreSbir(g, m, {}, ks);
  EXPECT_EQ(r.task, TaskKind::kSbir);
  EXPECT_DOUBLE_EQ(*r.Score("All", "Acc@1"), 100.0);
  EXPECT_DOUBLE_EQ(*r.Score("All", "Acc@2"), 100.0);
  EXPECT_DOUBLE_EQ(*r.Score("All", "Acc@4"), 50.0);
}

}  // namespace
}  // namespace sketchforge
