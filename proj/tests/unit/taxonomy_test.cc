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

#include <cmath>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "sketchforge/error.h"
#include "sketchforge/taxonomy.h"
#include "synthetic.h"

namespace sketchforge {
namespace {

std::vector<double> Unit(std::vector<double> v) {
  double n = 0;
  for (double x : v) n += x * x;
  for (double& x : v) x /= std::sqrt(n);
  return v;
}

TEST(MapTaxonomy, SelfSimilarity) {
  Taxonomy t;
  t.parent_classes = {"cat", "dog", "car"};
  t.embeddings = {{"cat", Unit({1, 0.2, 0})},
                  {"dog", Unit({0.2, 1, 0})},
                  {"car", Unit({0, 0.1, 1})}};
  const auto m = MapTaxonomy(t.parent_classes, t);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(m[i].parent, i);
    EXPECT_NEAR(m[i].score, 1.0, 1e-12);
    EXPECT_TRUE(m[i].used_embeddings);
  }
}

TEST(MapTaxonomy, ArgmaxOverCosines) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Taxonomy t;
    std::vector<std::string> sources;
    for (int p = 0; p < 8; ++p) {
      t.parent_classes.push_back("p" + std::to_string(p));
      t.embeddings[t.parent_classes.back()] = Unit({u(rng), u(rng), u(rng), u(rng)});
    }
    for (int s = 0; s < 12; ++s) {
      sources.push_back("s" + std::to_string(s));
      t.embeddings[sources.back()] = Unit({u(rng), u(rng), u(rng), u(rng)});
    }
    for (double threshold : {0.0, 0.9, 0.97}) {
      const auto m = MapTaxonomy(sources, t, threshold);
      for (std::size_t s = 0; s < sources.size(); ++s) {
        int best = 0;
        double best_sim = -2;
        for (int p = 0; p < 8; ++p) {
          const auto& a = t.embeddings[sources[s]];
          const auto& b = t.embeddings[t.parent_classes[p]];
          double sim = 0;
          for (int d = 0; d < 4; ++d) sim += a[d] * b[d];
          if (sim > best_sim) {
            best_sim = sim;
            best = p;
          }
        }
        EXPECT_NEAR(m[s].score, best_sim, 1e-12);
        if (best_sim >= threshold) {
          EXPECT_EQ(m[s].parent, best);
        } else {
          EXPECT_FALSE(m[s].parent);
        }
      }
    }
  }
}

TEST(MapTaxonomy, BelowThresholdStaysUnmapped) {
  Taxonomy t;
  t.parent_classes = {"dog"};
  t.embeddings = {{"dog", {1, 0}}, {"Dog", {0, 1}}};
  const std::vector<std::string> sources = {"Dog"};
  EXPECT_FALSE(MapTaxonomy(sources, t)[0].parent);
}

TEST(MapTaxonomy, NameFallbackWithoutFullEmbeddings) {
  Taxonomy t;
  t.parent_classes = {"traffic light sign", "car", "Dog"};
  t.embeddings = {{"car", {1, 0}}};  // incomplete: ignored
  const std::vector<std::string> sources = {"dog", "traffic light", "red car",
                                            "blue bird"};
  const auto m = MapTaxonomy(sources, t);
  EXPECT_EQ(m[0].parent, 2);
  EXPECT_EQ(m[1].parent, 0);
  EXPECT_NEAR(m[1].score, 2.0 / 3.0, 1e-12);
  EXPECT_EQ(m[2].parent, 1);
  EXPECT_FALSE(m[3].parent);
  for (const auto& x : m) EXPECT_FALSE(x.used_embeddings);
}

TEST(LoadTaxonomy, FilesRoundTrip) {
  const auto dir = synth::TempDir("taxonomy");
  {
    std::ofstream(dir / "parents.txt") << "cat\ndog\n\ncar\n";
    std::ofstream(dir / "emb.txt") << "cat\t3 4\ndog 0 2\n";
  }
  const Taxonomy t = LoadTaxonomy(dir / "parents.txt");
  EXPECT_EQ(t.parent_classes, (std::vector<std::string>{"cat", "dog", "car"}));
  EXPECT_EQ(t.IndexOf("dog"), 1);
  EXPECT_FALSE(t.IndexOf("cow"));
  const auto e = LoadEmbeddings(dir / "emb.txt");
  EXPECT_NEAR(e.at("cat")[0], 0.6, 1e-12);
  EXPECT_NEAR(e.at("dog")[1], 1.0, 1e-12);
  std::ofstream(dir / "zero.txt") << "cat 0 0\n";
  EXPECT_THROW(LoadEmbeddings(dir / "zero.txt"), Error);
  std::ofstream(dir / "ragged.txt") << "cat 1 0\ndog 1 0 0\n";
  EXPECT_THROW(LoadEmbeddings(dir / "ragged.txt"), Error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace sketchforge
