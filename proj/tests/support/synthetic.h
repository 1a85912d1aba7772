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

// Synthetic inputs shared by the unit and acceptance tests.

#ifndef SKETCHFORGE_TESTS_SYNTHETIC_H_
#define SKETCHFORGE_TESTS_SYNTHETIC_H_

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "sketchforge/detection_metrics.h"
#include "sketchforge/instruction_builder.h"
#include "sketchforge/raster.h"
#include "sketchforge/records.h"

namespace sketchforge::synth {

// Random box; coordinates snap to a 0.05 grid when `grid` so that exact
// IoU ties occur.
inline BoundingBox RandomBox(std::mt19937_64& rng, bool grid) {
  if (grid) {
    std::uniform_int_distribution<int> d(0, 20);
    int a = d(rng), b = d(rng), c = d(rng), e = d(rng);
    if (a == b) b = a < 20 ? a + 1 : a - 1;
    if (c == e) e = c < 20 ? c + 1 : c - 1;
    return {std::min(a, b) / 20.0, std::min(c, e) / 20.0,
            std::max(a, b) / 20.0, std::max(c, e) / 20.0};
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double x1 = u(rng), x2 = u(rng), y1 = u(rng), y2 = u(rng);
  if (x1 > x2) std::swap(x1, x2);
  if (y1 > y2) std::swap(y1, y2);
  x2 = std::max(x2, x1 + 1e-3);
  y2 = std::max(y2, y1 + 1e-3);
  return {x1, y1, std::min(x2, 1.0), std::min(y2, 1.0)};
}

// A jittered copy of `b`, kept valid.
inline BoundingBox Jitter(std::mt19937_64& rng, const BoundingBox& b,
                          double amount) {
  std::uniform_real_distribution<double> u(-amount, amount);
  BoundingBox o{std::clamp(b.x1 + u(rng), 0.0, 1.0),
                std::clamp(b.y1 + u(rng), 0.0, 1.0),
                std::clamp(b.x2 + u(rng), 0.0, 1.0),
                std::clamp(b.y2 + u(rng), 0.0, 1.0)};
  if (o.x1 > o.x2) std::swap(o.x1, o.x2);
  if (o.y1 > o.y2) std::swap(o.y1, o.y2);
  if (o.x2 - o.x1 < 1e-3) o = b;
  if (o.y2 - o.y1 < 1e-3) o = b;
  return o;
}

// A split of 1-3 samples, each with <= max_boxes GTs and preds; preds are
// mostly near-copies of GTs. Sizes and explicit scores vary by instance.
inline std::vector<DetectionSample> RandomSplit(std::mt19937_64& rng,
                                                int max_boxes = 4) {
  std::uniform_int_distribution<int> n_samples(1, 3);
  std::uniform_int_distribution<int> n_boxes(0, max_boxes);
  std::uniform_int_distribution<int> cls(0, 2);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> dim(16, 400);
  const bool grid = coin(rng);
  const bool scored = coin(rng);
  std::vector<DetectionSample> split(n_samples(rng));
  for (DetectionSample& s : split) {
    s.class_id = cls(rng);
    const int ng = n_boxes(rng);
    const int np = n_boxes(rng);
    for (int i = 0; i < ng; ++i) s.gts.push_back(RandomBox(rng, grid));
    for (int i = 0; i < np; ++i) {
      if (!s.gts.empty() && coin(rng)) {
        const auto& g = s.gts[std::uniform_int_distribution<std::size_t>(
            0, s.gts.size() - 1)(rng)];
        s.preds.push_back(grid ? g : Jitter(rng, g, 0.05));
      } else {
        s.preds.push_back(RandomBox(rng, grid));
      }
    }
    if (scored) {
      std::uniform_int_distribution<int> score(0, 4);  // coarse: ties happen
      for (std::size_t i = 0; i < s.preds.size(); ++i) {
        s.scores.push_back(score(rng) / 4.0);
      }
    }
    if (coin(rng)) s.size = ImageSize{dim(rng), dim(rng)};
  }
  return split;
}

// Grayscale raster with a filled disk of value `ink` on `paper`.
inline Image Disk(int w, int h, double cx, double cy, double r,
                  std::uint8_t ink = 0, std::uint8_t paper = 255) {
  Image img(w, h, 1, paper);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) img.at(x, y) = ink;
    }
  }
  return img;
}

// Rectangle mask [x0, x1) x [y0, y1).
inline MaskRaster RectMask(int w, int h, int x0, int y0, int x1, int y1) {
  std::vector<std::uint8_t> flags(static_cast<std::size_t>(w) * h, 0);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) flags[static_cast<std::size_t>(y) * w + x] = 1;
  }
  return MaskRaster(w, h, std::move(flags));
}

// Random RGB noise photo.
inline Image NoisePhoto(std::mt19937_64& rng, int w, int h) {
  Image img(w, h, 3);
  std::uniform_int_distribution<int> v(0, 255);
  for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(v(rng));
  return img;
}

// ImageRecord with one annotation covering pixel rect [x0,x1) x [y0,y1).
inline ImageRecord RecordWithBox(const std::string& id, int w, int h,
                                 int class_id, int x0, int y0, int x1, int y1) {
  ImageRecord r;
  r.id = id;
  r.path = id + ".png";
  r.width = w;
  r.height = h;
  Annotation a;
  a.class_id = class_id;
  a.box = {static_cast<double>(x0) / w, static_cast<double>(y0) / h,
           static_cast<double>(x1) / w, static_cast<double>(y1) / h};
  a.area_px = static_cast<double>(x1 - x0) * (y1 - y0);
  r.annotations.push_back(a);
  return r;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path TempDir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("sketchforge-" + name + "-" +
                    std::to_string(std::random_device{}()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}


// Ample inputs for a fine-tuning corpus: `classes` sketch classes with
// `per_class` sketches each, multi-object detection/counting images,
// single-object SBIR images and QA items.
struct CorpusFixture {
  std::vector<SketchRecord> sketch_list;
  SketchPool pool;
  std::vector<ImageRecord> images;
  std::vector<ImageRecord> single;
  std::vector<QaItem> qa;

  CorpusFixture(int classes = 5, int per_class = 4, int n_images = 200) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> cls(0, classes - 1);
    for (int c = 0; c < classes; ++c) {
      for (int i = 0; i < per_class; ++i) {
        sketch_list.push_back({"sk" + std::to_string(c) + "-" + std::to_string(i),
                               c, SketchSource::kSketchVclO365,
                               "sketches/sk.png", std::nullopt});
      }
    }
    pool = MakeSketchPool(sketch_list);
    for (int i = 0; i < n_images; ++i) {
      ImageRecord r;
      r.id = "img" + std::to_string(i);
      r.path = r.id + ".png";
      r.width = 640;
      r.height = 480;
      const int n = 1 + i % 3;
      for (int k = 0; k < n; ++k) {
        const double x = 0.1 + 0.25 * k;
        r.annotations.push_back({cls(rng), {x, 0.2, x + 0.2, 0.6}, 0.08 * 640 * 480});
      }
      images.push_back(r);
      ImageRecord one = r;
      one.id = "single" + std::to_string(i);
      one.annotations.resize(1);
      single.push_back(one);
      QaItem q;
      q.image_id = r.id;
      q.rounds = {{"What is in the picture?", "Objects."},
                  {"Is it indoors?", "No."}};
      if (i % 4 != 0) q.class_id = r.annotations[0].class_id;
      qa.push_back(q);
    }
  }

  CorpusSources Sources() const {
    CorpusSources s;
    s.detection_images = images;
    s.counting_images = images;
    s.sbir_images = single;
    s.qa_items = qa;
    s.sketches = &pool;
    return s;
  }
};

}  // namespace sketchforge::synth

#endif  // SKETCHFORGE_TESTS_SYNTHETIC_H_
