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

#include "sketchforge/jsonl.h"

#include <fstream>
#include <sstream>

namespace sketchforge {

using nlohmann::json;

namespace {

template <typename T>
void GetOptional(const json& j, const char* key, std::optional<T>& out) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    out.reset();
  } else {
    out = it->get<T>();
  }
}

template <typename T>
json OptionalToJson(const std::optional<T>& value) {
  return value ? json(*value) : json(nullptr);
}

}  // namespace

void to_json(json& j, const BoundingBox& box) {
  j = json{{"x1", box.x1}, {"y1", box.y1}, {"x2", box.x2}, {"y2", box.y2}};
}

void from_json(const json& j, BoundingBox& box) {
  if (j.is_array()) {
    if (j.size() != 4) throw Error(ErrorCode::kParse, "box needs 4 values");
    box = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
           j[3].get<double>()};
    return;
  }
  box = {j.at("x1").get<double>(), j.at("y1").get<double>(),
         j.at("x2").get<double>(), j.at("y2").get<double>()};
}

void to_json(json& j, const Annotation& a) {
  j = json{{"class_id", a.class_id}, {"box", a.box}, {"area_px", a.area_px}};
}

void from_json(const json& j, Annotation& a) {
  a.class_id = j.at("class_id").get<int>();
  a.box = j.at("box").get<BoundingBox>();
  a.area_px = j.at("area_px").get<double>();
}

void to_json(json& j, const ImageRecord& r) {
  j = json{{"id", r.id},         {"path", r.path},
           {"width", r.width},   {"height", r.height},
           {"annotations", r.annotations}};
}

void from_json(const json& j, ImageRecord& r) {
  r.id = j.at("id").get<std::string>();
  r.path = j.value("path", std::string());
  r.width = j.at("width").get<int>();
  r.height = j.at("height").get<int>();
  r.annotations = j.value("annotations", std::vector<Annotation>{});
}

void to_json(json& j, const SketchRecord& r) {
  j = json{{"id", r.id},
           {"class_id", r.class_id},
           {"source", SketchSourceName(r.source)},
           {"path", r.path},
           {"origin_image_id", OptionalToJson(r.origin_image_id)}};
}

void from_json(const json& j, SketchRecord& r) {
  r.id = j.at("id").get<std::string>();
  r.class_id = j.at("class_id").get<int>();
  const std::string source = j.at("source").get<std::string>();
  std::optional<SketchSource> parsed = SketchSourceFromName(source);
  if (!parsed) throw Error(ErrorCode::kParse, "unknown sketch source " + source);
  r.source = *parsed;
  r.path = j.value("path", std::string());
  GetOptional(j, "origin_image_id", r.origin_image_id);
}

void to_json(json& j, const Round& r) {
  j = json{{"prompt", r.prompt}, {"response", r.response}};
}

void from_json(const json& j, Round& r) {
  r.prompt = j.at("prompt").get<std::string>();
  r.response = j.value("response", std::string());
}

void to_json(json& j, const InstructionSample& s) {
  j = json{{"sample_id", s.sample_id},
           {"task", TaskDescriptor(s.task)},
           {"image_id", s.image_id},
           {"sketch_id", OptionalToJson(s.sketch_id)},
           {"rounds", s.rounds},
           {"target_class", OptionalToJson(s.target_class)}};
}

void from_json(const json& j, InstructionSample& s) {
  s.sample_id = j.at("sample_id").get<std::string>();
  const std::string task = j.at("task").get<std::string>();
  std::optional<TaskKind> kind = TaskKindFromDescriptor(task);
  if (!kind) throw Error(ErrorCode::kParse, "unknown task " + task);
  s.task = *kind;
  s.image_id = j.at("image_id").get<std::string>();
  GetOptional(j, "sketch_id", s.sketch_id);
  s.rounds = j.at("rounds").get<std::vector<Round>>();
  GetOptional(j, "target_class", s.target_class);
}

void to_json(json& j, const PredictionRecord& r) {
  j = json{{"sample_id", r.sample_id},
           {"raw_text", r.raw_text},
           {"yes_logprob", OptionalToJson(r.yes_logprob)},
           {"no_logprob", OptionalToJson(r.no_logprob)}};
  if (!r.box_scores.empty()) j["box_scores"] = r.box_scores;
}

void from_json(const json& j, PredictionRecord& r) {
  r.sample_id = j.at("sample_id").get<std::string>();
  r.raw_text = j.value("raw_text", std::string());
  GetOptional(j, "yes_logprob", r.yes_logprob);
  GetOptional(j, "no_logprob", r.no_logprob);
  r.box_scores = j.value("box_scores", std::vector<double>{});
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view contents) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(ErrorCode::kIo, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::vector<json> ReadJsonlObjects(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<json> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParse, path.string() + ":" +
                                         std::to_string(line_no) + ": " +
                                         e.what());
    }
    if (j.is_object() && j.contains(std::string(kHeaderKey))) continue;
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace sketchforge
