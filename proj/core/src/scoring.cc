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

#include "sketchforge/scoring.h"

#include <algorithm>
#include <cctype>
#include <optional>
#include <unordered_map>

#include "sketchforge/answer_grammar.h"
#include "sketchforge/counting_metrics.h"
#include "sketchforge/detection_metrics.h"
#include "sketchforge/error.h"

namespace sketchforge {
namespace {

constexpr const char* kAll = "All";

std::unordered_map<std::string, const PredictionRecord*> IndexPredictions(
    std::span<const PredictionRecord> predictions) {
  std::unordered_map<std::string, const PredictionRecord*> index;
  for (const PredictionRecord& p : predictions) {
    if (!index.emplace(p.sample_id, &p).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate prediction for sample " + p.sample_id);
    }
  }
  return index;
}

std::string SourceOf(const std::optional<std::string>& sketch_id,
                     const ScoringContext& ctx) {
  if (!sketch_id || ctx.sketches.empty()) return kAll;
  auto it = ctx.sketches.find(*sketch_id);
  if (it == ctx.sketches.end()) return kAll;
  return std::string(SketchSourceName(it->second.source));
}

// Row order: known sources in enum order, then "All".
std::vector<std::string> OrderedGroups(
    const std::map<std::string, std::vector<std::size_t>>& groups) {
  std::vector<std::string> out;
  for (SketchSource s : kAllSketchSources) {
    const std::string name(SketchSourceName(s));
    if (groups.count(name)) out.push_back(name);
  }
  for (const auto& [name, members] : groups) {
    if (std::find(out.begin(), out.end(), name) == out.end()) {
      out.push_back(name);
    }
  }
  return out;
}

// Samples of the given task, in input order.
std::vector<const InstructionSample*> SelectTask(
    std::span<const InstructionSample> ground_truth, TaskKind task) {
  std::vector<const InstructionSample*> out;
  for (const InstructionSample& s : ground_truth) {
    if (s.task == task) out.push_back(&s);
  }
  return out;
}

void Put(NamedScores& scores, const char* name, std::optional<double> v) {
  if (v) scores.emplace_back(name, *v);
}

bool IsBlank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

template <typename ScoreFn>
MetricReport Assemble(TaskKind task, const ScoringContext& ctx,
                      const std::vector<std::string>& source_of,
                      ScoreFn score) {
  MetricReport report;
  report.task = task;
  report.label = ctx.label;
  report.dataset = ctx.dataset;
  report.samples = source_of.size();
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < source_of.size(); ++i) {
    groups[source_of[i]].push_back(i);
  }
  for (const std::string& name : OrderedGroups(groups)) {
    MetricRow row;
    row.sketch_source = name;
    row.samples = groups[name].size();
    row.scores = score(groups[name]);
    report.rows.push_back(std::move(row));
  }
  std::vector<std::size_t> all(source_of.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  report.overall = score(all);
  return report;
}

}  // namespace

MetricReport ScoreCounting(std::span<const InstructionSample> ground_truth,
                           std::span<const PredictionRecord> predictions,
                           const ScoringContext& context) {
  const auto index = IndexPredictions(predictions);
  const auto samples = SelectTask(ground_truth, TaskKind::kCount);
  std::vector<std::optional<std::int64_t>> pred(samples.size());
  std::vector<std::int64_t> gt(samples.size());
  std::vector<std::string> source_of(samples.size());
  std::size_t missing = 0;
  std::size_t unparseable = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const InstructionSample& s = *samples[i];
    if (s.rounds.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sample " + s.sample_id + " has no rounds");
    }
    const auto truth = ParseCountAnswer(s.rounds.front().response);
    if (!truth) {
      throw Error(ErrorCode::kParse,
                  "ground truth of " + s.sample_id + " is not a count");
    }
    gt[i] = *truth;
    source_of[i] = SourceOf(s.sketch_id, context);
    auto it = index.find(s.sample_id);
    if (it == index.end()) {
      ++missing;
      continue;
    }
    pred[i] = ParseCountAnswer(it->second->raw_text);
    if (!pred[i]) ++unparseable;
  }
  MetricReport report =
      Assemble(TaskKind::kCount, context, source_of,
               [&](const std::vector<std::size_t>& members) {
                 std::vector<std::optional<std::int64_t>> p;
                 std::vector<std::int64_t> g;
                 for (std::size_t i : members) {
                   p.push_back(pred[i]);
                   g.push_back(gt[i]);
                 }
                 NamedScores scores;
                 if (!members.empty()) {
                   scores.emplace_back(
                       "Acc", ComputeCountingAccuracy(p, g).accuracy);
                 }
                 return scores;
               });
  report.missing = missing;
  report.unparseable = unparseable;
  return report;
}

MetricReport ScoreDetection(std::span<const InstructionSample> ground_truth,
                            std::span<const PredictionRecord> predictions,
                            const ScoringContext& context) {
  const auto index = IndexPredictions(predictions);
  const auto samples = SelectTask(ground_truth, TaskKind::kDetect);
  std::vector<DetectionSample> det(samples.size());
  std::vector<std::string> source_of(samples.size());
  std::size_t missing = 0;
  std::size_t unparseable = 0;
  int dropped = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const InstructionSample& s = *samples[i];
    if (s.rounds.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sample " + s.sample_id + " has no rounds");
    }
    DetectionSample& d = det[i];
    d.class_id = s.target_class.value_or(0);
    d.gts = ParseNormalizedBoxes(s.rounds.front().response);
    if (d.gts.empty()) {
      throw Error(ErrorCode::kParse,
                  "ground truth of " + s.sample_id + " holds no boxes");
    }
    if (auto it = context.image_sizes.find(s.image_id);
        it != context.image_sizes.end()) {
      d.size = it->second;
    }
    source_of[i] = SourceOf(s.sketch_id, context);
    auto it = index.find(s.sample_id);
    if (it == index.end()) {
      ++missing;
      continue;
    }
    const PredictionRecord& p = *it->second;
    const BoxListParse parse = ParseBoxList(p.raw_text);
    if (parse.TupleCount() == 0) ++unparseable;
    std::vector<std::size_t> ordinals;
    d.preds = ResolveBoxes(parse, d.size, &dropped, &ordinals);
    // Explicit scores are honoured only when they align with the tuples.
    if (!p.box_scores.empty() && p.box_scores.size() == parse.TupleCount()) {
      for (std::size_t o : ordinals) d.scores.push_back(p.box_scores[o]);
    }
  }
  const std::vector<double> thresholds = DefaultIouThresholds();
  MetricReport report = Assemble(
      TaskKind::kDetect, context, source_of,
      [&](const std::vector<std::size_t>& members) {
        std::vector<DetectionSample> subset;
        for (std::size_t i : members) subset.push_back(det[i]);
        NamedScores scores;
        if (subset.empty()) return scores;
        const DetectionAccuracy acc =
            ComputeDetectionAccuracy(subset, thresholds, context.macro);
        const MeanAveragePrecision ap =
            ComputeMeanAveragePrecision(subset, thresholds);
        Put(scores, "Acc", acc.acc);
        Put(scores, "Acc@0.5", acc.acc50);
        Put(scores, "Acc_S", acc.acc_small);
        Put(scores, "Acc_M", acc.acc_medium);
        Put(scores, "Acc_L", acc.acc_large);
        Put(scores, "mAP", ap.map);
        Put(scores, "mAP@0.5", ap.map50);
        Put(scores, "mAP_S", ap.map_small);
        Put(scores, "mAP_M", ap.map_medium);
        Put(scores, "mAP_L", ap.map_large);
        return scores;
      });
  report.missing = missing;
  report.unparseable = unparseable;
  report.dropped_boxes = static_cast<std::size_t>(dropped);
  return report;
}

MetricReport ScoreVqa(std::span<const InstructionSample> ground_truth,
                      std::span<const PredictionRecord> predictions,
                      const ScoringContext& context) {
  const auto index = IndexPredictions(predictions);
  const auto samples = SelectTask(ground_truth, TaskKind::kVqa);
  const std::string prefix = std::string(TaskDescriptor(TaskKind::kVqa)) + " ";
  std::vector<bool> answered(samples.size());
  std::vector<bool> prefixed(samples.size());
  std::vector<std::string> source_of(samples.size());
  std::size_t missing = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const InstructionSample& s = *samples[i];
    prefixed[i] =
        !s.rounds.empty() && s.rounds.front().prompt.rfind(prefix, 0) == 0;
    source_of[i] = SourceOf(s.sketch_id, context);
    auto it = index.find(s.sample_id);
    if (it == index.end()) {
      ++missing;
    } else {
      answered[i] = !IsBlank(it->second->raw_text);
    }
  }
  MetricReport report =
      Assemble(TaskKind::kVqa, context, source_of,
               [&](const std::vector<std::size_t>& members) {
                 NamedScores scores;
                 if (members.empty()) return scores;
                 double a = 0.0;
                 double p = 0.0;
                 for (std::size_t i : members) {
                   a += answered[i];
                   p += prefixed[i];
                 }
                 const double n = static_cast<double>(members.size());
                 scores.emplace_back("Answered", 100.0 * a / n);
                 scores.emplace_back("Prefixed", 100.0 * p / n);
                 return scores;
               });
  report.missing = missing;
  return report;
}

MetricReport ScoreSbir(const GallerySpec& gallery, const ScoreMatrix& scores,
                       const ScoringContext& context,
                       std::span<const std::size_t> ks) {
  gallery.Validate(static_cast<int>(gallery.classes.size()),
                   gallery.classes.empty()
                       ? kPerClass
                       : static_cast<int>(gallery.gallery.size() /
                                          gallery.classes.size()));
  if (scores.size() != gallery.queries.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "score matrix has " + std::to_string(scores.size()) +
                    " rows for " + std::to_string(gallery.queries.size()) +
                    " queries");
  }
  const auto rankings = RankGallery(scores);
  std::vector<int> gallery_labels;
  for (const LabeledItem& g : gallery.gallery) gallery_labels.push_back(g.class_id);
  std::vector<std::string> source_of;
  for (const LabeledItem& q : gallery.queries) {
    source_of.push_back(SourceOf(q.id, context));
  }
  return Assemble(
      TaskKind::kSbir, context, source_of,
      [&](const std::vector<std::size_t>& members) {
        std::vector<std::vector<std::size_t>> r;
        std::vector<int> labels;
        for (std::size_t i : members) {
          r.push_back(rankings[i]);
          labels.push_back(gallery.queries[i].class_id);
        }
        NamedScores out;
        if (members.empty()) return out;
        for (std::size_t k : ks) {
          out.emplace_back("Acc@" + std::to_string(k),
                           SbirAccAtK(r, labels, gallery_labels, k));
        }
        return out;
      });
}

}  // namespace sketchforge
