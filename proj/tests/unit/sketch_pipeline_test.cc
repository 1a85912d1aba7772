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
#include <random>

#include <gtest/gtest.h>

#include "sketchforge/error.h"
#include "sketchforge/image_io.h"
#include "sketchforge/morphology.h"
#include "sketchforge/sketch_pipeline.h"
#include "synthetic.h"

namespace sketchforge {
namespace {

struct Bounds {
  int x0 = 1 << 30, y0 = 1 << 30, x1 = -1, y1 = -1;  // inclusive
  int w() const { return x1 - x0 + 1; }
  int h() const { return y1 - y0 + 1; }
};

Bounds StrokeBox(const StrokeMap& s) {
  Bounds b;
  for (int y = 0; y < s.height(); ++y) {
    for (int x = 0; x < s.width(); ++x) {
      if (!s.IsStroke(x, y)) continue;
      b.x0 = std::min(b.x0, x);
      b.y0 = std::min(b.y0, y);
      b.x1 = std::max(b.x1, x);
      b.y1 = std::max(b.y1, y);
    }
  }
  return b;
}

StrokeMap RandomStrokes(std::mt19937_64& rng, int w, int h, double p) {
  StrokeMap s = StrokeMap::Blank(w, h);
  std::bernoulli_distribution on(p);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (on(rng)) s.SetStroke(x, y);
    }
  }
  return s;
}

bool IsBinary(const Image& img) {
  for (auto p : img.pixels()) {
    if (p != 0 && p != 255) return false;
  }
  return img.channels() == 1;
}

TEST(MaskRaster, RejectsEmptyMask) {
  try {
    MaskRaster(4, 4, std::vector<std::uint8_t>(16, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyMask);
  }
}

TEST(MaskForeground, IdentityUnderFullMask) {
  std::mt19937_64 rng(1);
  const Image photo = synth::NoisePhoto(rng, 12, 9);
  const MaskRaster full = synth::RectMask(12, 9, 0, 0, 12, 9);
  EXPECT_EQ(MaskForeground(photo, full), photo);
}

TEST(MaskForeground, CheckerboardOutsideIsWhite) {
  std::mt19937_64 rng(2);
  const Image photo = synth::NoisePhoto(rng, 8, 8);
  std::vector<std::uint8_t> flags(64);
  for (int i = 0; i < 64; ++i) flags[i] = ((i % 8) + (i / 8)) % 2;
  const MaskRaster mask(8, 8, flags);
  const Image out = MaskForeground(photo, mask);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      for (int c = 0; c < 3; ++c) {
        EXPECT_EQ(out.at(x, y, c), mask.at(x, y) ? photo.at(x, y, c) : 255);
      }
    }
  }
}

TEST(MaskForeground, DimensionMismatch) {
  try {
    MaskForeground(Image(4, 4, 1), synth::RectMask(5, 4, 0, 0, 2, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGeometryMismatch);
  }
}

TEST(AggregateStrokes, UnionProperties) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const StrokeMap a = RandomStrokes(rng, 17, 11, 0.3);
    const StrokeMap b = RandomStrokes(rng, 17, 11, 0.3);
    EXPECT_EQ(AggregateStrokes(a, StrokeMap::Blank(17, 11)), a);
    EXPECT_EQ(AggregateStrokes(a, a), a);
    EXPECT_EQ(AggregateStrokes(a, b), AggregateStrokes(b, a));
    const StrokeMap u = AggregateStrokes(a, b);
    for (int y = 0; y < 11; ++y) {
      for (int x = 0; x < 17; ++x) {
        EXPECT_EQ(u.IsStroke(x, y), a.IsStroke(x, y) || b.IsStroke(x, y));
      }
    }
  }
  EXPECT_THROW(AggregateStrokes(StrokeMap::Blank(3, 3), StrokeMap::Blank(3, 4)),
               Error);
}

TEST(RenderCanvas, AlwaysTargetSizedAndBinary) {
  std::mt19937_64 rng(4);
  for (int target : {64, 100, 512}) {
    const StrokeMap s = RandomStrokes(rng, 37, 90, 0.05);
    const StrokeMap out = RenderCanvas(s, target);
    EXPECT_EQ(out.width(), target);
    EXPECT_EQ(out.height(), target);
    EXPECT_TRUE(IsBinary(out.image()));
    EXPECT_GT(out.StrokeCount(), 0u);
  }
}

TEST(RenderCanvas, CenteredSquareStaysCentered) {
  StrokeMap s = StrokeMap::Blank(50, 50);
  for (int y = 10; y < 30; ++y) {
    for (int x = 20; x < 40; ++x) s.SetStroke(x, y);
  }
  const Bounds b = StrokeBox(RenderCanvas(s, 256));
  EXPECT_LE(std::abs(b.x0 - (255 - b.x1)), 1);
  EXPECT_LE(std::abs(b.y0 - (255 - b.y1)), 1);
  EXPECT_LE(std::abs(b.w() - b.h()), 1);
}

TEST(RenderCanvas, PreservesAspectRatio) {
  for (auto [w, h] : {std::pair{40, 10}, {10, 40}, {300, 120}, {7, 3}}) {
    StrokeMap s = StrokeMap::Blank(w + 10, h + 10);
    for (int y = 5; y < 5 + h; ++y) {
      for (int x = 5; x < 5 + w; ++x) s.SetStroke(x, y);
    }
    const Bounds b = StrokeBox(RenderCanvas(s, 512));
    // One uniform scale maps the content plus its 4% margin onto the canvas.
    const int longest = std::max(w, h);
    const int margin = static_cast<int>(std::ceil(0.04 * longest));
    const double scale = 512.0 / (longest + 2 * margin);
    EXPECT_LE(std::abs(b.w() - w * scale), 1.0 + 1e-9) << w << "x" << h;
    EXPECT_LE(std::abs(b.h() - h * scale), 1.0 + 1e-9) << w << "x" << h;
  }
}

TEST(RenderCanvas, Errors) {
  try {
    RenderCanvas(StrokeMap::Blank(10, 10), 128);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptySketch);
  }
  StrokeMap s = StrokeMap::Blank(4, 4);
  s.SetStroke(1, 1);
  EXPECT_THROW(RenderCanvas(s, 63), Error);
}

class PipelineTest : public ::testing::Test {
 protected:
  // A 120x100 noise photo with a 40x30 rectangular instance.
  void SetUp() override {
    std::mt19937_64 rng(9);
    photo_ = synth::NoisePhoto(rng, 120, 100);
    record_ = synth::RecordWithBox("img", 120, 100, 4, 30, 20, 70, 50);
    mask_img_ = Image(120, 100, 1, 0);
    // An ellipse inside the annotation box.
    for (int y = 20; y < 50; ++y) {
      for (int x = 30; x < 70; ++x) {
        const double dx = (x + 0.5 - 50) / 20.0, dy = (y + 0.5 - 35) / 15.0;
        if (dx * dx + dy * dy <= 1.0) mask_img_.at(x, y) = 255;
      }
    }
  }

  MaskRaster Mask() const { return MaskRaster::FromImage(mask_img_); }

  Image photo_;
  ImageRecord record_;
  Image mask_img_;
};

TEST_F(PipelineTest, BackgroundInvariance) {
  SketchOptions opts;
  const InstanceSketch ref = GenerateInstanceSketch(photo_, record_, 0, Mask(), opts);
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 5; ++trial) {
    Image other = synth::NoisePhoto(rng, 120, 100);
    for (int y = 0; y < 100; ++y) {
      for (int x = 0; x < 120; ++x) {
        if (!mask_img_.at(x, y)) continue;
        for (int c = 0; c < 3; ++c) other.at(x, y, c) = photo_.at(x, y, c);
      }
    }
    const InstanceSketch s = GenerateInstanceSketch(other, record_, 0, Mask(), opts);
    EXPECT_EQ(s.raster, ref.raster);
  }
}

TEST_F(PipelineTest, OutputIsBinarySquareCanvasWithProvenance) {
  for (int canvas : {64, 256, 512}) {
    SketchOptions opts;
    opts.canvas = canvas;
    opts.source = SketchSource::kSketchVclOi;
    const InstanceSketch s = GenerateInstanceSketch(photo_, record_, 0, Mask(), opts);
    EXPECT_EQ(s.raster.width(), canvas);
    EXPECT_EQ(s.raster.height(), canvas);
    EXPECT_TRUE(IsBinary(s.raster.image()));
    EXPECT_EQ(s.record.id, "img_0");
    EXPECT_EQ(s.record.class_id, 4);
    EXPECT_EQ(s.record.origin_image_id, "img");
    EXPECT_EQ(s.record.source, SketchSource::kSketchVclOi);
  }
}

TEST_F(PipelineTest, FlatFieldYieldsOnlyTheContour) {
  for (int radius : {1, 2}) {
    SketchOptions opts;
    opts.gradient_radius = radius;
    const Image flat(120, 100, 3, 90);
    const InstanceSketch s = GenerateInstanceSketch(flat, record_, 0, Mask(), opts);
    const Image silhouette = MorphGradient(mask_img_, radius);
    StrokeMap contour = StrokeMap::Blank(120, 100);
    for (int y = 0; y < 100; ++y) {
      for (int x = 0; x < 120; ++x) {
        if (silhouette.at(x, y) > 0) contour.SetStroke(x, y);
      }
    }
    EXPECT_EQ(s.raster, RenderCanvas(contour, opts.canvas));
  }
}

TEST(Pipeline, BlackSquareStrokesCoverAllFourSides) {
  Image photo(100, 100, 3, 255);
  for (int y = 30; y < 70; ++y) {
    for (int x = 30; x < 70; ++x) {
      for (int c = 0; c < 3; ++c) photo.at(x, y, c) = 0;
    }
  }
  const ImageRecord rec = synth::RecordWithBox("sq", 100, 100, 1, 30, 30, 70, 70);
  const InstanceSketch s = GenerateInstanceSketch(
      photo, rec, 0, synth::RectMask(100, 100, 30, 30, 70, 70), SketchOptions{});
  const Bounds b = StrokeBox(s.raster);
  auto column = [&](int x) {
    int n = 0;
    for (int y = b.y0; y <= b.y1; ++y) n += s.raster.IsStroke(x, y);
    return n;
  };
  auto row = [&](int y) {
    int n = 0;
    for (int x = b.x0; x <= b.x1; ++x) n += s.raster.IsStroke(x, y);
    return n;
  };
  EXPECT_GE(column(b.x0), b.h() * 9 / 10);
  EXPECT_GE(column(b.x1), b.h() * 9 / 10);
  EXPECT_GE(row(b.y0), b.w() * 9 / 10);
  EXPECT_GE(row(b.y1), b.w() * 9 / 10);
  EXPECT_LE(std::abs(b.w() - b.h()), 1);
}

TEST_F(PipelineTest, RejectsMaskOutsideGrownBox) {
  Image far = mask_img_;
  far.at(110, 90) = 255;
  EXPECT_THROW(GenerateInstanceSketch(photo_, record_, 0,
                                      MaskRaster::FromImage(far), SketchOptions{}),
               Error);
  EXPECT_THROW(GenerateInstanceSketch(photo_, record_, 1, Mask(), SketchOptions{}),
               Error);
}

TEST_F(PipelineTest, ExternalStylizationIsMaskedAndAggregated) {
  const auto dir = synth::TempDir("external");
  Image ext(120, 100, 1, 255);
  for (int x = 0; x < 120; ++x) ext.at(x, 35) = 0;  // crosses the mask
  WriteImage(dir / "img_0.png", ext);
  SketchOptions opts;
  opts.stylizer.kind = StylizerKind::kExternalRasterDir;
  opts.stylizer.external_dir = dir;
  const InstanceSketch with_line = GenerateInstanceSketch(photo_, record_, 0, Mask(), opts);
  EXPECT_TRUE(IsBinary(with_line.raster.image()));
  // Same output when the line is cut back to the mask: outside strokes drop.
  for (int x = 0; x < 120; ++x) {
    if (!mask_img_.at(x, 35)) ext.at(x, 35) = 255;
  }
  WriteImage(dir / "img_0.png", ext);
  EXPECT_EQ(GenerateInstanceSketch(photo_, record_, 0, Mask(), opts).raster,
            with_line.raster);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace sketchforge
