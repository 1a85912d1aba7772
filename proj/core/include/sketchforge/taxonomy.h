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

#ifndef SKETCHFORGE_TAXONOMY_H_
#define SKETCHFORGE_TAXONOMY_H_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sketchforge {

inline constexpr double kDefaultSimilarityThreshold = 0.85;
inline constexpr double kJaccardThreshold = 0.5;

struct Taxonomy {
  std::vector<std::string> parent_classes;
  // Class name -> unit-norm embedding. Optional.
  std::map<std::string, std::vector<double>> embeddings;

  std::optional<int> IndexOf(const std::string& name) const;
  int size() const { return static_cast<int>(parent_classes.size()); }
};

// One parent class per line.
Taxonomy LoadTaxonomy(const std::filesystem::path& path);

// "name<TAB>v1 v2 ..." or "name v1 v2 ..." per line. Vectors are scaled to
// unit norm; zero vectors and inconsistent dimensions are rejected.
std::map<std::string, std::vector<double>> LoadEmbeddings(
    const std::filesystem::path& path);

struct TaxonomyMatch {
  std::optional<int> parent;
  double score = 0.0;  // cosine similarity or Jaccard index of the best parent
  bool used_embeddings = false;
};

// Maps every source class to at most one parent. With embeddings for every
// involved name, the parent with the highest cosine similarity wins if it
// reaches sim_threshold. Otherwise an exact case-insensitive name match, then
// the best token-set Jaccard index >= 0.5. Ties go to the lower parent index.
std::vector<TaxonomyMatch> MapTaxonomy(
    std::span<const std::string> source_names, const Taxonomy& taxonomy,
    double sim_threshold = kDefaultSimilarityThreshold);

}  // namespace sketchforge

#endif  // SKETCHFORGE_TAXONOMY_H_
