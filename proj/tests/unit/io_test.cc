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

#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "sketchforge/coco.h"
#include "sketchforge/error.h"
#include "sketchforge/image_io.h"
#include "sketchforge/jsonl.h"
#include "synthetic.h"

namespace sketchforge {
namespace {

class IoTest : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = synth::TempDir("io"); }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

TEST_F(IoTest, RasterRoundTrips) {
  std::mt19937_64 rng(61);
  const Image rgb = synth::NoisePhoto(rng, 13, 7);
  Image gray(9, 4, 1);
  for (auto& p : gray.pixels()) p = static_cast<std::uint8_t>(rng());
  for (const char* ext : {".png", ".ppm"}) {
    const auto path = dir_ / (std::string("rgb") + ext);
    WriteImage(path, rgb);
    EXPECT_EQ(ReadImage(path), rgb) << ext;
  }
  for (const char* ext : {".png", ".pgm"}) {
    const auto path = dir_ / (std::string("gray") + ext);
    WriteImage(path, gray);
    EXPECT_EQ(ReadImage(path), gray) << ext;
  }
}

TEST_F(IoTest, RasterErrors) {
  EXPECT_THROW(ReadImage(dir_ / "missing.png"), Error);
  EXPECT_THROW(WriteImage(dir_ / "x.bmp", Image(2, 2, 1)), Error);
  std::ofstream(dir_ / "junk.png") << "not a png";
  EXPECT_THROW(ReadImage(dir_ / "junk.png"), Error);
}

TEST_F(IoTest, JsonlSkipsHeaderAndNamesBadLines) {
  std::vector<SketchRecord> records = {
      {"a", 1, SketchSource::kSketchy, "a.png", std::nullopt},
      {"b", 2, SketchSource::kSketchVclO365, "b.png", "img"}};
  WriteFileAtomic(dir_ / "s.jsonl", ToJsonl(records, {{"tool", "x"}}));
  const auto back = ReadJsonl<SketchRecord>(dir_ / "s.jsonl");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].origin_image_id, "img");
  EXPECT_EQ(back[0].source, SketchSource::kSketchy);
  std::ofstream(dir_ / "bad.jsonl") << "{\"id\": \"a\"}\n\n{oops\n";
  try {
    ReadJsonlObjects(dir_ / "bad.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
  }
}

TEST_F(IoTest, CocoReader) {
  std::ofstream(dir_ / "coco.json") << R"({
    "images": [{"id": 1, "file_name": "a.jpg", "width": 200, "height": 100},
               {"id": 2, "file_name": "b.jpg", "width": 50, "height": 50}],
    "categories": [{"id": 5, "name": "Dog"}, {"id": 2, "name": "cat"}],
    "annotations": [
      {"id": 10, "image_id": 1, "category_id": 5, "bbox": [20, 10, 80, 50]},
      {"id": 11, "image_id": 1, "category_id": 2, "bbox": [150, 50, 100, 100]},
      {"id": 12, "image_id": 1, "category_id": 2, "bbox": [0, 0, 10, 10], "iscrowd": 1},
      {"id": 13, "image_id": 2, "category_id": 2, "bbox": [5, 5, 0, 10]}
    ]})";
  const CocoDataset d = ReadCocoDetection(dir_ / "coco.json");
  EXPECT_EQ(d.class_names, (std::vector<std::string>{"cat", "Dog"}));
  ASSERT_EQ(d.images.size(), 2u);
  const ImageRecord& a = d.images[0];
  ASSERT_EQ(a.annotations.size(), 2u);
  EXPECT_EQ(a.annotations[0].class_id, 1);
  EXPECT_NEAR(a.annotations[0].box.x1, 0.1, 1e-12);
  EXPECT_NEAR(a.annotations[0].box.y2, 0.6, 1e-12);
  EXPECT_DOUBLE_EQ(a.annotations[0].area_px, 4000);
  // Clipped to the image.
  EXPECT_DOUBLE_EQ(a.annotations[1].box.x2, 1.0);
  EXPECT_DOUBLE_EQ(a.annotations[1].area_px, 50.0 * 50.0);
  EXPECT_EQ(d.skipped_annotations, 2u);

  Taxonomy t;
  t.parent_classes = {"dog"};
  const CocoDataset mapped = ReadCocoDetection(dir_ / "coco.json", &t);
  EXPECT_EQ(mapped.images[0].annotations.size(), 1u);
  EXPECT_EQ(mapped.images[0].annotations[0].class_id, 0);
}

}  // namespace
}  // namespace sketchforge
