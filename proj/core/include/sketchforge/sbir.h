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

// Sketch-based image retrieval protocol: a class-stratified gallery, a
// query x gallery matrix of yes-probabilities, per-query rankings and
// top-K accuracy.

#ifndef SKETCHFORGE_SBIR_H_
#define SKETCHFORGE_SBIR_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace sketchforge {

inline constexpr int kGalleryClasses = 20;
inline constexpr int kPerClass = 5;

struct LabeledItem {
  std::string id;
  int class_id = 0;

  friend bool operator==(const LabeledItem&, const LabeledItem&) = default;
};

struct GallerySpec {
  std::vector<int> classes;           // selection order
  std::vector<LabeledItem> gallery;   // kPerClass images per class
  std::vector<LabeledItem> queries;   // kPerClass sketches per class

  // Throws kInvalidArgument unless there are n_classes classes with
  // per_class gallery images and queries each.
  void Validate(int n_classes = kGalleryClasses,
                int per_class = kPerClass) const;
};

void to_json(nlohmann::json& j, const LabeledItem& item);
void from_json(const nlohmann::json& j, LabeledItem& item);
void to_json(nlohmann::json& j, const GallerySpec& spec);
void from_json(const nlohmann::json& j, GallerySpec& spec);

// Indices floor(i * (C - 1) / (n - 1)) for i = 0 .. n-1.
std::vector<std::size_t> EvenlySpacedRanks(std::size_t num_classes,
                                           std::size_t n = kGalleryClasses);

// Sorts eligible classes (>= per_class images and sketches, and a score) by
// detection mAP, descending with ties to the lower class id, takes the
// evenly spaced ranks, then samples per_class images and sketches for each
// class without replacement. Throws kInsufficientSupply when fewer than
// n_classes classes qualify.
GallerySpec BuildSbirGallery(const std::map<int, double>& class_map_scores,
                             std::span<const LabeledItem> images,
                             std::span<const LabeledItem> sketches,
                             std::uint64_t seed,
                             int n_classes = kGalleryClasses,
                             int per_class = kPerClass);

// rows = queries, columns = gallery items; each entry is P(yes).
using ScoreMatrix = std::vector<std::vector<std::optional<double>>>;

// Reads (query_id, gallery_id, yes_logprob, no_logprob) JSONL rows into a
// matrix aligned with the gallery spec. Duplicate or unknown ids are
// errors; missing cells stay empty.
ScoreMatrix LoadScoreMatrix(const std::filesystem::path& path,
                            const GallerySpec& spec);

// Gallery indices per query by descending probability, ties to the lower
// index. Throws kMissingEntries naming every absent (query, gallery) cell.
std::vector<std::vector<std::size_t>> RankGallery(const ScoreMatrix& scores);

// Mean over queries of (same-class items in the top k) / k, as a
// percentage. Throws kInvalidArgument for k < 1 or k > gallery size.
double SbirAccAtK(const std::vector<std::vector<std::size_t>>& rankings,
                  std::span<const int> query_labels,
                  std::span<const int> gallery_labels, std::size_t k);

}  // namespace sketchforge

#endif  // SKETCHFORGE_SBIR_H_
