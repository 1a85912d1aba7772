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

#include "sketchforge/sketch_pipeline.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sketchforge/error.h"
#include "sketchforge/image_io.h"
#include "sketchforge/morphology.h"

namespace sketchforge {
namespace {

constexpr double kCanvasMargin = 0.04;
constexpr int kBinarizeLevel = 128;

struct Rect {
  int x0, y0, x1, y1;  // half-open
  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
};

void RequireSameSize(ImageSize a, ImageSize b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::kGeometryMismatch,
                std::string(what) + ": " + std::to_string(a.width) + "x" +
                    std::to_string(a.height) + " vs " +
                    std::to_string(b.width) + "x" + std::to_string(b.height));
  }
}

Image CropImage(const Image& src, const Rect& r) {
  Image out(r.width(), r.height(), src.channels());
  for (int y = 0; y < r.height(); ++y) {
    for (int x = 0; x < r.width(); ++x) {
      for (int c = 0; c < src.channels(); ++c) {
        out.at(x, y, c) = src.at(r.x0 + x, r.y0 + y, c);
      }
    }
  }
  return out;
}

// Contribution of source pixels to one output pixel along an axis.
struct Tap {
  int index;
  double weight;
};

// Bilinear taps when enlarging, box-filter (area) taps when shrinking.
std::vector<std::vector<Tap>> AxisTaps(int src_n, int dst_n) {
  std::vector<std::vector<Tap>> taps(dst_n);
  const double scale = static_cast<double>(dst_n) / src_n;
  for (int o = 0; o < dst_n; ++o) {
    if (scale >= 1.0) {
      const double s = (o + 0.5) / scale - 0.5;
      const int i0 = static_cast<int>(std::floor(s));
      const double frac = s - i0;
      taps[o].push_back({std::clamp(i0, 0, src_n - 1), 1.0 - frac});
      taps[o].push_back({std::clamp(i0 + 1, 0, src_n - 1), frac});
    } else {
      const double lo = o / scale;
      const double hi = (o + 1) / scale;
      for (int i = static_cast<int>(std::floor(lo));
           i < static_cast<int>(std::ceil(hi)) && i < src_n; ++i) {
        const double overlap = std::min(hi, i + 1.0) - std::max(lo, double(i));
        if (overlap > 0) taps[o].push_back({i, overlap * scale});
      }
    }
  }
  return taps;
}

std::vector<double> Resample(const std::vector<double>& src, int sw, int sh,
                             int dw, int dh) {
  const auto xt = AxisTaps(sw, dw);
  const auto yt = AxisTaps(sh, dh);
  std::vector<double> rows(static_cast<std::size_t>(dw) * sh);
  for (int y = 0; y < sh; ++y) {
    for (int x = 0; x < dw; ++x) {
      double acc = 0.0;
      for (const Tap& t : xt[x]) {
        acc += t.weight * src[static_cast<std::size_t>(y) * sw + t.index];
      }
      rows[static_cast<std::size_t>(y) * dw + x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(dw) * dh, 0.0);
  for (int y = 0; y < dh; ++y) {
    double* dst = out.data() + static_cast<std::size_t>(y) * dw;
    for (const Tap& t : yt[y]) {
      const double* src_row =
          rows.data() + static_cast<std::size_t>(t.index) * dw;
      for (int x = 0; x < dw; ++x) dst[x] += t.weight * src_row[x];
    }
  }
  return out;
}

std::optional<Rect> StrokeBounds(const StrokeMap& strokes) {
  Rect r{strokes.width(), strokes.height(), 0, 0};
  bool any = false;
  for (int y = 0; y < strokes.height(); ++y) {
    for (int x = 0; x < strokes.width(); ++x) {
      if (!strokes.IsStroke(x, y)) continue;
      any = true;
      r.x0 = std::min(r.x0, x);
      r.y0 = std::min(r.y0, y);
      r.x1 = std::max(r.x1, x + 1);
      r.y1 = std::max(r.y1, y + 1);
    }
  }
  if (!any) return std::nullopt;
  return r;
}

void CheckMaskInsideBox(const MaskRaster& mask, const Annotation& annotation,
                        ImageSize size) {
  const PixelBox px = DenormalizeBox(annotation.box, size.width, size.height);
  const double gx = 0.1 * (px.x2 - px.x1);
  const double gy = 0.1 * (px.y2 - px.y1);
  const double x_lo = std::floor(px.x1 - gx);
  const double x_hi = std::ceil(px.x2 + gx);
  const double y_lo = std::floor(px.y1 - gy);
  const double y_hi = std::ceil(px.y2 + gy);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.at(x, y) && (x < x_lo || x + 1 > x_hi || y < y_lo ||
                            y + 1 > y_hi)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "mask pixel (" + std::to_string(x) + ", " +
                        std::to_string(y) +
                        ") lies outside the annotation box grown by 10%");
      }
    }
  }
}

Rect MaskBounds(const MaskRaster& mask, int margin) {
  Rect r{mask.width(), mask.height(), 0, 0};
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.at(x, y)) continue;
      r.x0 = std::min(r.x0, x);
      r.y0 = std::min(r.y0, y);
      r.x1 = std::max(r.x1, x + 1);
      r.y1 = std::max(r.y1, y + 1);
    }
  }
  r.x0 = std::max(0, r.x0 - margin);
  r.y0 = std::max(0, r.y0 - margin);
  r.x1 = std::min(mask.width(), r.x1 + margin);
  r.y1 = std::min(mask.height(), r.y1 + margin);
  return r;
}

}  // namespace

Image MaskForeground(const Image& image, const MaskRaster& mask) {
  RequireSameSize(image.size(), mask.size(), "mask_foreground");
  Image out = image;
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      if (mask.at(x, y)) continue;
      for (int c = 0; c < image.channels(); ++c) out.at(x, y, c) = 255;
    }
  }
  return out;
}

Image ToGrayscale(const Image& image) {
  if (image.channels() == 1) return image;
  Image out(image.width(), image.height(), 1);
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const int luma = 299 * image.at(x, y, 0) + 587 * image.at(x, y, 1) +
                       114 * image.at(x, y, 2);
      out.at(x, y) = static_cast<std::uint8_t>((luma + 500) / 1000);
    }
  }
  return out;
}

StrokeMap AggregateStrokes(const StrokeMap& a, const StrokeMap& b) {
  RequireSameSize(a.size(), b.size(), "aggregate_strokes");
  StrokeMap out = a;
  for (int y = 0; y < b.height(); ++y) {
    for (int x = 0; x < b.width(); ++x) {
      if (b.IsStroke(x, y)) out.SetStroke(x, y);
    }
  }
  return out;
}

StrokeMap RenderCanvas(const StrokeMap& strokes, int target) {
  if (target < kMinCanvas) {
    throw Error(ErrorCode::kInvalidArgument,
                "canvas must be at least " + std::to_string(kMinCanvas));
  }
  std::optional<Rect> bounds = StrokeBounds(strokes);
  if (!bounds) throw Error(ErrorCode::kEmptySketch, "no strokes to render");

  const int margin = static_cast<int>(std::ceil(
      kCanvasMargin * std::max(bounds->width(), bounds->height())));
  const Rect crop{bounds->x0 - margin, bounds->y0 - margin,
                  bounds->x1 + margin, bounds->y1 + margin};
  const int cw = crop.width();
  const int ch = crop.height();
  std::vector<double> src(static_cast<std::size_t>(cw) * ch, 255.0);
  for (int y = std::max(0, crop.y0); y < std::min(strokes.height(), crop.y1);
       ++y) {
    for (int x = std::max(0, crop.x0); x < std::min(strokes.width(), crop.x1);
         ++x) {
      if (strokes.IsStroke(x, y)) {
        src[static_cast<std::size_t>(y - crop.y0) * cw + (x - crop.x0)] = 0.0;
      }
    }
  }

  const double scale = static_cast<double>(target) / std::max(cw, ch);
  const int dw = std::clamp(static_cast<int>(std::lround(cw * scale)), 1,
                            target);
  const int dh = std::clamp(static_cast<int>(std::lround(ch * scale)), 1,
                            target);
  const std::vector<double> scaled = Resample(src, cw, ch, dw, dh);
  const int ox = (target - dw) / 2;
  const int oy = (target - dh) / 2;

  StrokeMap out = StrokeMap::Blank(target, target);
  for (int y = 0; y < dh; ++y) {
    for (int x = 0; x < dw; ++x) {
      if (scaled[static_cast<std::size_t>(y) * dw + x] < kBinarizeLevel) {
        out.SetStroke(ox + x, oy + y);
      }
    }
  }
  return out;
}

std::string InstanceSketchId(const ImageRecord& image,
                             std::size_t annotation_index) {
  return image.id + "_" + std::to_string(annotation_index);
}

InstanceSketch GenerateInstanceSketch(const Image& photo,
                                      const ImageRecord& image,
                                      std::size_t annotation_index,
                                      const MaskRaster& mask,
                                      const SketchOptions& options) {
  options.stylizer.Validate();
  if (options.gradient_radius < 1) {
    throw Error(ErrorCode::kInvalidArgument, "gradient radius must be >= 1");
  }
  if (annotation_index >= image.annotations.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "annotation index out of range for image " + image.id);
  }
  RequireSameSize(photo.size(), image.size(), "photo vs record");
  RequireSameSize(mask.size(), image.size(), "mask vs record");
  const Annotation& annotation = image.annotations[annotation_index];
  CheckMaskInsideBox(mask, annotation, image.size());
  const std::string sketch_id = InstanceSketchId(image, annotation_index);

  // Every stroke lies within gradient_radius of the mask, and every filter
  // below only reads pixels near the mask, so a tight crop is exact.
  const int r = options.gradient_radius;
  const Rect roi = MaskBounds(mask, r + 2);
  const Image mask_img = CropImage(mask.ToImage(), roi);
  const Image fg = ToGrayscale(MaskForeground(CropImage(photo, roi),
                                              MaskRaster::FromImage(mask_img)));
  const int w = roi.width();
  const int h = roi.height();

  // Interior strokes only come from windows that lie entirely inside the
  // mask; the silhouette below covers the boundary.
  StrokeMap styled = StrokeMap::Blank(w, h);
  if (options.stylizer.kind == StylizerKind::kNativeXDoG) {
    const Image interior = Erode(mask_img, options.stylizer.SupportRadius());
    const StrokeMap raw = XDoGStylize(fg, options.stylizer);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (raw.IsStroke(x, y) && interior.at(x, y)) styled.SetStroke(x, y);
      }
    }
  } else {
    const Image ext =
        ReadImage(options.stylizer.external_dir / (sketch_id + ".png"));
    RequireSameSize(ext.size(), image.size(), "external stylization");
    const Image ext_gray = CropImage(ToGrayscale(ext), roi);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (ext_gray.at(x, y) < kBinarizeLevel && mask_img.at(x, y)) {
          styled.SetStroke(x, y);
        }
      }
    }
  }

  StrokeMap edges = StrokeMap::Blank(w, h);
  {
    const Image gradient = MorphGradient(fg, r);
    const Image interior = Erode(mask_img, r);
    std::vector<std::uint8_t> values;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (interior.at(x, y)) values.push_back(gradient.at(x, y));
      }
    }
    if (!values.empty()) {
      const int t = OtsuThreshold(values);
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          const int g = gradient.at(x, y);
          if (interior.at(x, y) && g > t && g > 0) edges.SetStroke(x, y);
        }
      }
    }
  }

  StrokeMap contour = StrokeMap::Blank(w, h);
  {
    const Image silhouette = MorphGradient(mask_img, r);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (silhouette.at(x, y) > 0) contour.SetStroke(x, y);
      }
    }
  }

  StrokeMap all = AggregateStrokes(AggregateStrokes(styled, edges), contour);
  InstanceSketch result;
  result.raster = RenderCanvas(all, options.canvas);
  result.record.id = sketch_id;
  result.record.class_id = annotation.class_id;
  result.record.source = options.source;
  result.record.origin_image_id = image.id;
  return result;
}

}  // namespace sketchforge
