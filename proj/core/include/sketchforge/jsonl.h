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

// JSON mapping of the record types and JSONL file helpers. Field names
// match the struct members. Optional fields are written as null.
//
// Output manifests may begin with a header object {"__header__": {...}}
// recording the run configuration; readers skip it.

#ifndef SKETCHFORGE_JSONL_H_
#define SKETCHFORGE_JSONL_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "sketchforge/box.h"
#include "sketchforge/error.h"
#include "sketchforge/records.h"

namespace sketchforge {

inline constexpr std::string_view kHeaderKey = "__header__";

void to_json(nlohmann::json& j, const BoundingBox& box);
void from_json(const nlohmann::json& j, BoundingBox& box);
void to_json(nlohmann::json& j, const Annotation& a);
void from_json(const nlohmann::json& j, Annotation& a);
void to_json(nlohmann::json& j, const ImageRecord& r);
void from_json(const nlohmann::json& j, ImageRecord& r);
void to_json(nlohmann::json& j, const SketchRecord& r);
void from_json(const nlohmann::json& j, SketchRecord& r);
void to_json(nlohmann::json& j, const Round& r);
void from_json(const nlohmann::json& j, Round& r);
void to_json(nlohmann::json& j, const InstructionSample& s);
void from_json(const nlohmann::json& j, InstructionSample& s);
void to_json(nlohmann::json& j, const PredictionRecord& r);
void from_json(const nlohmann::json& j, PredictionRecord& r);

std::string ReadTextFile(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it into place.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view contents);

// Parses every non-empty, non-header line. Errors name the file and line.
std::vector<nlohmann::json> ReadJsonlObjects(
    const std::filesystem::path& path);

template <typename T>
std::vector<T> ReadJsonl(const std::filesystem::path& path) {
  std::vector<T> out;
  const std::vector<nlohmann::json> objects = ReadJsonlObjects(path);
  out.reserve(objects.size());
  for (std::size_t i = 0; i < objects.size(); ++i) {
    try {
      out.push_back(objects[i].get<T>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, path.string() + ": record " +
                                         std::to_string(i + 1) + ": " +
                                         e.what());
    }
  }
  return out;
}

// One compact JSON object per line; an optional header line comes first.
template <typename T>
std::string ToJsonl(const std::vector<T>& records,
                    const nlohmann::json& header = nullptr) {
  std::string out;
  if (!header.is_null()) {
    nlohmann::json line;
    line[std::string(kHeaderKey)] = header;
    out += line.dump();
    out += '\n';
  }
  for (const T& r : records) {
    out += nlohmann::json(r).dump();
    out += '\n';
  }
  return out;
}

}  // namespace sketchforge

#endif  // SKETCHFORGE_JSONL_H_
