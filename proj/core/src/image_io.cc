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

#include "sketchforge/image_io.h"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <string>

#include "sketchforge/error.h"
#include "sketchforge/jsonl.h"

namespace sketchforge {
namespace {

std::string Extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return ext;
}

Image ReadPng(const std::filesystem::path& path) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  const std::string name = path.string();
  if (!png_image_begin_read_from_file(&png, name.c_str())) {
    throw Error(ErrorCode::kIo, name + ": " + png.message);
  }
  const bool color = (png.format & PNG_FORMAT_FLAG_COLOR) != 0;
  png.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  Image image(static_cast<int>(png.width), static_cast<int>(png.height),
              color ? 3 : 1);
  // Composite any alpha onto white so masked-out regions stay background.
  png_color background{255, 255, 255};
  if (!png_image_finish_read(&png, &background, image.pixels().data(), 0,
                             nullptr)) {
    std::string message = png.message;
    png_image_free(&png);
    throw Error(ErrorCode::kIo, name + ": " + message);
  }
  return image;
}

void WritePng(const std::filesystem::path& path, const Image& image) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width());
  png.height = static_cast<png_uint_32>(image.height());
  png.format = image.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&png, nullptr, &size, 0,
                                 image.pixels().data(), 0, nullptr)) {
    throw Error(ErrorCode::kIo, path.string() + ": " + png.message);
  }
  std::string buffer(size, '\0');
  if (!png_image_write_to_memory(&png, buffer.data(), &size, 0,
                                 image.pixels().data(), 0, nullptr)) {
    throw Error(ErrorCode::kIo, path.string() + ": " + png.message);
  }
  buffer.resize(size);
  WriteFileAtomic(path, buffer);
}

// Netpbm header token, skipping whitespace and comments.
std::string NextToken(std::istream& in) {
  std::string token;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty()) break;
      continue;
    }
    token += static_cast<char>(c);
  }
  return token;
}

Image ReadNetpbm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  const std::string magic = NextToken(in);
  if (magic != "P5" && magic != "P6") {
    throw Error(ErrorCode::kParse,
                path.string() + ": only binary P5/P6 Netpbm is supported");
  }
  int width = 0, height = 0, maxval = 0;
  try {
    width = std::stoi(NextToken(in));
    height = std::stoi(NextToken(in));
    maxval = std::stoi(NextToken(in));
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParse, path.string() + ": bad Netpbm header");
  }
  if (maxval != 255) {
    throw Error(ErrorCode::kParse, path.string() + ": maxval must be 255");
  }
  Image image(width, height, magic == "P6" ? 3 : 1);
  auto px = image.pixels();
  in.read(reinterpret_cast<char*>(px.data()),
          static_cast<std::streamsize>(px.size()));
  if (in.gcount() != static_cast<std::streamsize>(px.size())) {
    throw Error(ErrorCode::kParse, path.string() + ": truncated pixel data");
  }
  return image;
}

void WriteNetpbm(const std::filesystem::path& path, const Image& image) {
  std::string out = (image.channels() == 3 ? "P6\n" : "P5\n") +
                    std::to_string(image.width()) + " " +
                    std::to_string(image.height()) + "\n255\n";
  auto px = image.pixels();
  out.append(reinterpret_cast<const char*>(px.data()), px.size());
  WriteFileAtomic(path, out);
}

}  // namespace

Image ReadImage(const std::filesystem::path& path) {
  const std::string ext = Extension(path);
  if (ext == ".png") return ReadPng(path);
  if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") return ReadNetpbm(path);
  throw Error(ErrorCode::kInvalidArgument,
              "unsupported raster format: " + path.string());
}

void WriteImage(const std::filesystem::path& path, const Image& image) {
  const std::string ext = Extension(path);
  if (ext == ".png") return WritePng(path, image);
  if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") {
    return WriteNetpbm(path, image);
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unsupported raster format: " + path.string());
}

}  // namespace sketchforge
