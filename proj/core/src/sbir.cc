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

#include "sketchforge/sbir.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "sketchforge/answer_grammar.h"
#include "sketchforge/error.h"
#include "sketchforge/jsonl.h"
#include "sketchforge/random.h"

namespace sketchforge {

void to_json(nlohmann::json& j, const LabeledItem& item) {
  j = nlohmann::json{{"id", item.id}, {"class_id", item.class_id}};
}

void from_json(const nlohmann::json& j, LabeledItem& item) {
  item.id = j.at("id").get<std::string>();
  item.class_id = j.at("class_id").get<int>();
}

void to_json(nlohmann::json& j, const GallerySpec& spec) {
  j = nlohmann::json{{"classes", spec.classes},
                     {"gallery", spec.gallery},
                     {"queries", spec.queries}};
}

void from_json(const nlohmann::json& j, GallerySpec& spec) {
  spec.classes = j.at("classes").get<std::vector<int>>();
  spec.gallery = j.at("gallery").get<std::vector<LabeledItem>>();
  spec.queries = j.at("queries").get<std::vector<LabeledItem>>();
}

void GallerySpec::Validate(int n_classes, int per_class) const {
  auto fail = [](const std::string& m) {
    throw Error(ErrorCode::kInvalidArgument, "gallery spec: " + m);
  };
  if (static_cast<int>(classes.size()) != n_classes) {
    fail("expected " + std::to_string(n_classes) + " classes");
  }
  const std::set<int> class_set(classes.begin(), classes.end());
  if (static_cast<int>(class_set.size()) != n_classes) fail("duplicate class");
  for (const auto* items : {&gallery, &queries}) {
    std::map<int, int> per;
    std::set<std::string> ids;
    for (const LabeledItem& item : *items) {
      if (!class_set.count(item.class_id)) fail("item of unselected class");
      if (!ids.insert(item.id).second) fail("duplicate id " + item.id);
      ++per[item.class_id];
    }
    for (int c : classes) {
      if (per[c] != per_class) {
        fail("class " + std::to_string(c) + " needs " +
             std::to_string(per_class) + " items per side");
      }
    }
  }
}

std::vector<std::size_t> EvenlySpacedRanks(std::size_t num_classes,
                                           std::size_t n) {
  std::vector<std::size_t> ranks;
  if (n == 0 || num_classes == 0) return ranks;
  if (n == 1) return {0};
  for (std::size_t i = 0; i < n; ++i) {
    ranks.push_back(i * (num_classes - 1) / (n - 1));
  }
  return ranks;
}

GallerySpec BuildSbirGallery(const std::map<int, double>& class_map_scores,
                             std::span<const LabeledItem> images,
                             std::span<const LabeledItem> sketches,
                             std::uint64_t seed, int n_classes,
                             int per_class) {
  std::map<int, std::vector<const LabeledItem*>> images_of;
  std::map<int, std::vector<const LabeledItem*>> sketches_of;
  for (const LabeledItem& i : images) images_of[i.class_id].push_back(&i);
  for (const LabeledItem& s : sketches) sketches_of[s.class_id].push_back(&s);

  std::vector<std::pair<int, double>> eligible;
  for (const auto& [c, score] : class_map_scores) {
    if (images_of[c].size() >= static_cast<std::size_t>(per_class) &&
        sketches_of[c].size() >= static_cast<std::size_t>(per_class)) {
      eligible.emplace_back(c, score);
    }
  }
  if (eligible.size() < static_cast<std::size_t>(n_classes)) {
    throw Error(ErrorCode::kInsufficientSupply,
                "only " + std::to_string(eligible.size()) +
                    " classes have a score and " + std::to_string(per_class) +
                    " images and sketches; need " +
                    std::to_string(n_classes));
  }
  std::sort(eligible.begin(), eligible.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });

  GallerySpec spec;
  for (std::size_t rank : EvenlySpacedRanks(eligible.size(), n_classes)) {
    const int c = eligible[rank].first;
    spec.classes.push_back(c);
    Rng rng(DeriveSeed(seed, {static_cast<std::uint64_t>(c)}));
    for (std::size_t i :
         SampleWithoutReplacement(rng, images_of[c].size(), per_class)) {
      spec.gallery.push_back(*images_of[c][i]);
    }
    for (std::size_t i :
         SampleWithoutReplacement(rng, sketches_of[c].size(), per_class)) {
      spec.queries.push_back(*sketches_of[c][i]);
    }
  }
  return spec;
}

ScoreMatrix LoadScoreMatrix(const std::filesystem::path& path,
                            const GallerySpec& spec) {
  std::map<std::string, std::size_t> qi;
  std::map<std::string, std::size_t> gi;
  for (std::size_t i = 0; i < spec.queries.size(); ++i) {
    qi[spec.queries[i].id] = i;
  }
  for (std::size_t i = 0; i < spec.gallery.size(); ++i) {
    gi[spec.gallery[i].id] = i;
  }
  ScoreMatrix m(spec.queries.size(),
                std::vector<std::optional<double>>(spec.gallery.size()));
  for (const nlohmann::json& row : ReadJsonlObjects(path)) {
    std::string q;
    std::string g;
    PredictionRecord rec;
    try {
      q = row.at("query_id").get<std::string>();
      g = row.at("gallery_id").get<std::string>();
      if (row.contains("yes_logprob") && !row["yes_logprob"].is_null()) {
        rec.yes_logprob = row["yes_logprob"].get<double>();
      }
      if (row.contains("no_logprob") && !row["no_logprob"].is_null()) {
        rec.no_logprob = row["no_logprob"].get<double>();
      }
      rec.raw_text = row.value("raw_text", std::string());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
    }
    auto qit = qi.find(q);
    auto git = gi.find(g);
    if (qit == qi.end() || git == gi.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "score row (" + q + ", " + g + ") not in the gallery spec");
    }
    auto& cell = m[qit->second][git->second];
    if (cell) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate score row (" + q + ", " + g + ")");
    }
    std::optional<double> p = ParseYesProbability(rec);
    if (!p) {
      throw Error(ErrorCode::kParse,
                  "score row (" + q + ", " + g + ") has no yes/no signal");
    }
    cell = *p;
  }
  return m;
}

std::vector<std::vector<std::size_t>> RankGallery(const ScoreMatrix& scores) {
  std::string missing;
  std::size_t n_missing = 0;
  for (std::size_t q = 0; q < scores.size(); ++q) {
    for (std::size_t g = 0; g < scores[q].size(); ++g) {
      if (scores[q][g]) continue;
      if (n_missing++ < 20) {
        missing += " (" + std::to_string(q) + ", " + std::to_string(g) + ")";
      }
    }
  }
  if (n_missing > 0) {
    throw Error(ErrorCode::kMissingEntries,
                std::to_string(n_missing) + " score entries missing:" +
                    missing + (n_missing > 20 ? " ..." : ""));
  }
  std::vector<std::vector<std::size_t>> out;
  out.reserve(scores.size());
  for (const auto& row : scores) {
    std::vector<std::size_t> order(row.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return *row[a] > *row[b];
                     });
    out.push_back(std::move(order));
  }
  return out;
}

double SbirAccAtK(const std::vector<std::vector<std::size_t>>& rankings,
                  std::span<const int> query_labels,
                  std::span<const int> gallery_labels, std::size_t k) {
  if (k < 1 || k > gallery_labels.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "k must lie in [1, gallery size]");
  }
  if (rankings.size() != query_labels.size() || rankings.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "one ranking per query is required");
  }
  double sum = 0.0;
  for (std::size_t q = 0; q < rankings.size(); ++q) {
    std::size_t hits = 0;
    for (std::size_t r = 0; r < k; ++r) {
      hits += gallery_labels[rankings[q][r]] == query_labels[q];
    }
    sum += static_cast<double>(hits) / static_cast<double>(k);
  }
  return 100.0 * sum / static_cast<double>(rankings.size());
}

}  // namespace sketchforge
