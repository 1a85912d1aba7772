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

#include "sketchforge/detection_metrics.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "sketchforge/error.h"

namespace sketchforge {
namespace {

constexpr double kSmallMax = 32.0 * 32.0;
constexpr double kLargeMin = 96.0 * 96.0;
constexpr int kRecallPoints = 101;

// Scope of a score: every box, or one size stratum.
using Scope = std::optional<SizeStratum>;

bool InScope(const DetectionSample& s, const BoundingBox& box, Scope scope) {
  if (!scope) return true;
  if (!s.size) return false;
  return StratumOf(box.Area() * s.size->width * s.size->height) == *scope;
}

double Mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

// Matched-GT flags for one sample at one threshold.
std::vector<bool> MatchedGts(const DetectionSample& s, double t) {
  std::vector<bool> matched(s.gts.size(), false);
  for (const MatchPair& p : GreedyMatch(s.preds, s.gts, t).pairs) {
    matched[p.gt] = true;
  }
  return matched;
}

std::optional<double> RecallAt(std::span<const DetectionSample> samples,
                               double t, Scope scope, bool macro) {
  double matched_total = 0.0;
  double gt_total = 0.0;
  std::vector<double> per_sample;
  for (const DetectionSample& s : samples) {
    const std::vector<bool> matched = MatchedGts(s, t);
    double m = 0.0;
    double n = 0.0;
    for (std::size_t g = 0; g < s.gts.size(); ++g) {
      if (!InScope(s, s.gts[g], scope)) continue;
      n += 1.0;
      if (matched[g]) m += 1.0;
    }
    matched_total += m;
    gt_total += n;
    if (n > 0) per_sample.push_back(m / n);
  }
  if (gt_total == 0) return std::nullopt;
  return macro ? 100.0 * Mean(per_sample) : 100.0 * matched_total / gt_total;
}

std::optional<double> MeanOver(std::span<const DetectionSample> samples,
                               std::span<const double> thresholds,
                               Scope scope, bool macro) {
  std::vector<double> values;
  for (double t : thresholds) {
    std::optional<double> v = RecallAt(samples, t, scope, macro);
    if (!v) return std::nullopt;
    values.push_back(*v);
  }
  if (values.empty()) return std::nullopt;
  return Mean(values);
}

struct RankedDet {
  double score;
  std::size_t sample;
  std::size_t pred;
  bool tp;
};

std::vector<double> RankScores(const DetectionSample& s) {
  if (s.scores.empty()) {
    std::vector<double> pseudo(s.preds.size());
    for (std::size_t i = 0; i < pseudo.size(); ++i) {
      pseudo[i] = -static_cast<double>(i);
    }
    return pseudo;
  }
  if (s.scores.size() != s.preds.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "box scores must align with predicted boxes");
  }
  return s.scores;
}

// 101-point interpolated AP from detections already sorted by rank.
double InterpolatedAp(const std::vector<RankedDet>& dets, std::size_t num_gt) {
  std::vector<double> precision(dets.size());
  std::vector<double> recall(dets.size());
  double tp = 0.0;
  double fp = 0.0;
  for (std::size_t i = 0; i < dets.size(); ++i) {
    (dets[i].tp ? tp : fp) += 1.0;
    precision[i] = tp / (tp + fp);
    recall[i] = tp / static_cast<double>(num_gt);
  }
  for (std::size_t i = dets.size(); i-- > 1;) {
    precision[i - 1] = std::max(precision[i - 1], precision[i]);
  }
  double sum = 0.0;
  for (int j = 0; j < kRecallPoints; ++j) {
    const double r = j / 100.0;
    auto it = std::lower_bound(recall.begin(), recall.end(), r);
    if (it != recall.end()) sum += precision[it - recall.begin()];
  }
  return sum / kRecallPoints;
}

std::optional<double> MapAt(std::span<const DetectionSample> samples,
                            const std::vector<std::vector<double>>& ranks,
                            double t, Scope scope) {
  std::map<int, std::vector<RankedDet>> dets;
  std::map<int, std::size_t> num_gt;
  for (std::size_t si = 0; si < samples.size(); ++si) {
    const DetectionSample& s = samples[si];
    std::vector<bool> gt_in(s.gts.size());
    for (std::size_t g = 0; g < s.gts.size(); ++g) {
      gt_in[g] = InScope(s, s.gts[g], scope);
      if (gt_in[g]) ++num_gt[s.class_id];
    }
    const std::vector<double>& score = ranks[si];
    std::vector<std::size_t> order(s.preds.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return score[a] > score[b];
                     });
    std::vector<bool> taken(s.gts.size(), false);
    auto& class_dets = dets[s.class_id];
    for (std::size_t p : order) {
      std::optional<std::size_t> best;
      double best_iou = t;
      for (std::size_t g = 0; g < s.gts.size(); ++g) {
        if (taken[g]) continue;
        const double iou = Iou(s.preds[p], s.gts[g]);
        if (iou >= best_iou && (!best || iou > best_iou)) {
          best = g;
          best_iou = iou;
        }
      }
      if (best) taken[*best] = true;
      const bool ignored = best ? !gt_in[*best] : !InScope(s, s.preds[p], scope);
      if (!ignored) class_dets.push_back({score[p], si, p, best.has_value()});
    }
  }
  std::vector<double> aps;
  for (auto& [class_id, list] : dets) {
    const std::size_t n = num_gt[class_id];
    if (n == 0) continue;
    std::sort(list.begin(), list.end(),
              [](const RankedDet& a, const RankedDet& b) {
                return std::tie(b.score, a.sample, a.pred) <
                       std::tie(a.score, b.sample, b.pred);
              });
    aps.push_back(InterpolatedAp(list, n));
  }
  if (aps.empty()) return std::nullopt;
  return Mean(aps);
}

std::optional<double> MapOver(std::span<const DetectionSample> samples,
                              const std::vector<std::vector<double>>& ranks,
                              std::span<const double> thresholds,
                              Scope scope) {
  std::vector<double> values;
  for (double t : thresholds) {
    std::optional<double> v = MapAt(samples, ranks, t, scope);
    if (!v) return std::nullopt;
    values.push_back(*v);
  }
  if (values.empty()) return std::nullopt;
  return 100.0 * Mean(values);
}

}  // namespace

double Iou(const BoundingBox& a, const BoundingBox& b) {
  const double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  const double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.Area() + b.Area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

MatchResult GreedyMatch(std::span<const BoundingBox> preds,
                        std::span<const BoundingBox> gts, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "IoU threshold must lie in (0, 1]");
  }
  std::vector<MatchPair> candidates;
  for (std::size_t p = 0; p < preds.size(); ++p) {
    for (std::size_t g = 0; g < gts.size(); ++g) {
      const double iou = Iou(preds[p], gts[g]);
      if (iou >= threshold) candidates.push_back({p, g, iou});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const MatchPair& a, const MatchPair& b) {
              return std::tie(b.iou, a.pred, a.gt) <
                     std::tie(a.iou, b.pred, b.gt);
            });
  MatchResult result;
  std::vector<bool> pred_used(preds.size(), false);
  std::vector<bool> gt_used(gts.size(), false);
  for (const MatchPair& c : candidates) {
    if (pred_used[c.pred] || gt_used[c.gt]) continue;
    pred_used[c.pred] = gt_used[c.gt] = true;
    result.pairs.push_back(c);
  }
  for (std::size_t p = 0; p < preds.size(); ++p) {
    if (!pred_used[p]) result.unmatched_preds.push_back(p);
  }
  for (std::size_t g = 0; g < gts.size(); ++g) {
    if (!gt_used[g]) result.unmatched_gts.push_back(g);
  }
  return result;
}

SizeStratum StratumOf(double area_px) {
  if (area_px < kSmallMax) return SizeStratum::kSmall;
  if (area_px > kLargeMin) return SizeStratum::kLarge;
  return SizeStratum::kMedium;
}

std::vector<double> DefaultIouThresholds() {
  std::vector<double> t;
  for (int i = 0; i < 10; ++i) t.push_back((50 + 5 * i) / 100.0);
  return t;
}

DetectionAccuracy ComputeDetectionAccuracy(
    std::span<const DetectionSample> samples,
    std::span<const double> thresholds, bool macro) {
  DetectionAccuracy out;
  out.thresholds.assign(thresholds.begin(), thresholds.end());
  for (double t : thresholds) {
    out.acc_at.push_back(RecallAt(samples, t, std::nullopt, macro).value_or(0));
  }
  out.acc = MeanOver(samples, thresholds, std::nullopt, macro);
  out.acc50 = RecallAt(samples, 0.5, std::nullopt, macro);
  out.acc_small = MeanOver(samples, thresholds, SizeStratum::kSmall, macro);
  out.acc_medium = MeanOver(samples, thresholds, SizeStratum::kMedium, macro);
  out.acc_large = MeanOver(samples, thresholds, SizeStratum::kLarge, macro);
  return out;
}

MeanAveragePrecision ComputeMeanAveragePrecision(
    std::span<const DetectionSample> samples,
    std::span<const double> thresholds) {
  std::vector<std::vector<double>> ranks;
  ranks.reserve(samples.size());
  for (const DetectionSample& s : samples) ranks.push_back(RankScores(s));
  const double half[] = {0.5};
  MeanAveragePrecision out;
  out.map = MapOver(samples, ranks, thresholds, std::nullopt);
  out.map50 = MapOver(samples, ranks, half, std::nullopt);
  out.map_small = MapOver(samples, ranks, thresholds, SizeStratum::kSmall);
  out.map_medium = MapOver(samples, ranks, thresholds, SizeStratum::kMedium);
  out.map_large = MapOver(samples, ranks, thresholds, SizeStratum::kLarge);
  return out;
}

}  // namespace sketchforge
