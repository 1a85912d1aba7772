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

#include "sketchforge/coco.h"

#include <algorithm>
#include <cctype>
#include <map>

#include <nlohmann/json.hpp>

#include "sketchforge/error.h"
#include "sketchforge/jsonl.h"

namespace sketchforge {
namespace {

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

std::string IdString(const nlohmann::json& id) {
  return id.is_string() ? id.get<std::string>() : id.dump();
}

}  // namespace

CocoDataset ReadCocoDetection(const std::filesystem::path& path,
                              const Taxonomy* taxonomy) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(ReadTextFile(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
  CocoDataset out;
  try {
    std::map<std::int64_t, std::string> categories;
    for (const auto& c : root.at("categories")) {
      categories[c.at("id").get<std::int64_t>()] = c.at("name").get<std::string>();
    }
    std::map<std::int64_t, int> class_of;
    if (taxonomy == nullptr) {
      for (const auto& [id, name] : categories) {
        class_of[id] = static_cast<int>(out.class_names.size());
        out.class_names.push_back(name);
      }
    } else {
      out.class_names = taxonomy->parent_classes;
      std::map<std::string, int> by_name;
      for (int i = 0; i < taxonomy->size(); ++i) {
        by_name.emplace(Lower(taxonomy->parent_classes[i]), i);
      }
      for (const auto& [id, name] : categories) {
        auto it = by_name.find(Lower(name));
        if (it != by_name.end()) class_of[id] = it->second;
      }
    }

    std::map<std::string, std::size_t> index_of;
    for (const auto& im : root.at("images")) {
      ImageRecord rec;
      rec.id = IdString(im.at("id"));
      rec.path = im.value("file_name", std::string());
      rec.width = im.at("width").get<int>();
      rec.height = im.at("height").get<int>();
      if (rec.width < 1 || rec.height < 1) {
        throw Error(ErrorCode::kParse, "image " + rec.id + " has bad size");
      }
      index_of[rec.id] = out.images.size();
      out.images.push_back(std::move(rec));
    }

    for (const auto& a : root.value("annotations", nlohmann::json::array())) {
      auto img = index_of.find(IdString(a.at("image_id")));
      auto cls = class_of.find(a.at("category_id").get<std::int64_t>());
      if (img == index_of.end() || cls == class_of.end() ||
          a.value("iscrowd", 0) != 0) {
        ++out.skipped_annotations;
        continue;
      }
      ImageRecord& rec = out.images[img->second];
      const auto& bbox = a.at("bbox");
      const double x = bbox.at(0).get<double>();
      const double y = bbox.at(1).get<double>();
      const double w = bbox.at(2).get<double>();
      const double h = bbox.at(3).get<double>();
      PixelBox px{std::clamp(x, 0.0, double(rec.width)),
                  std::clamp(y, 0.0, double(rec.height)),
                  std::clamp(x + w, 0.0, double(rec.width)),
                  std::clamp(y + h, 0.0, double(rec.height))};
      if (!(px.x1 < px.x2 && px.y1 < px.y2)) {
        ++out.skipped_annotations;
        continue;
      }
      Annotation ann;
      ann.class_id = cls->second;
      ann.box = NormalizeBox(px, rec.width, rec.height);
      ann.area_px = px.Area();
      rec.annotations.push_back(ann);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
  return out;
}

}  // namespace sketchforge
