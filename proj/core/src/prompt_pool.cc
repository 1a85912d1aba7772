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

#include "sketchforge/prompt_pool.h"

#include <fstream>

#include "sketchforge/error.h"

namespace sketchforge {
namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

PromptPool PromptPool::Default() {
  PromptPool pool;
  pool.per_task_[static_cast<int>(TaskKind::kCount)] = {
      "<sketch> How many objects like the one in this sketch are in the "
      "image? Reply with a single integer.",
      "<sketch> Count the instances of the sketched object in the image. "
      "Answer with one number.",
      "<sketch> Using the sketch as a reference, report how many matching "
      "objects the image contains.",
      "<sketch> What is the number of occurrences of the object depicted in "
      "the sketch?",
  };
  pool.per_task_[static_cast<int>(TaskKind::kDetect)] = {
      "<sketch> Locate every object in the image that matches the sketch. "
      "Give boxes as {[x1, y1, x2, y2]}.",
      "<sketch> Find all instances of the sketched object and return their "
      "bounding boxes.",
      "<sketch> Output normalized bounding boxes for each object resembling "
      "this sketch.",
      "<sketch> Where are the objects shown in the sketch? Provide their "
      "boxes.",
  };
  pool.per_task_[static_cast<int>(TaskKind::kVqa)] = {
      "<sketch> Answer the question about the object in the sketch.",
      "<sketch> Look at the object the sketch refers to and respond.",
      "<sketch> Use the sketch to identify the object, then answer.",
  };
  pool.per_task_[static_cast<int>(TaskKind::kSbir)] = {
      "<sketch> Does the image contain the object drawn in the sketch? "
      "Answer yes or no.",
      "<sketch> Is the sketched object present in this image? Reply yes or "
      "no.",
      "<sketch> Do the sketch and the image show the same kind of object? "
      "Answer yes or no.",
  };
  pool.pretrain_ = {
      "<sketch> Describe the image with respect to the object in the "
      "sketch, then give its bounding boxes.",
      "<sketch> Identify what the sketch shows, describe the scene, and "
      "locate the sketched object.",
      "<sketch> Explain how the sketched object appears in this image and "
      "list its boxes.",
  };
  return pool;
}

PromptPool PromptPool::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  PromptPool pool = Default();
  std::array<std::vector<std::string>, 4> loaded;
  std::vector<std::string> loaded_pretrain;
  std::vector<std::string>* current = nullptr;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      const std::string name = line.substr(1, line.size() - 2);
      if (name == "PRETRAIN") {
        current = &loaded_pretrain;
      } else if (auto task = TaskKindFromDescriptor(name)) {
        current = &loaded[static_cast<int>(*task)];
      } else {
        throw Error(ErrorCode::kParse, path.string() + ":" +
                                           std::to_string(line_no) +
                                           ": unknown section " + name);
      }
      continue;
    }
    if (current == nullptr) {
      throw Error(ErrorCode::kParse, path.string() + ":" +
                                         std::to_string(line_no) +
                                         ": template outside a section");
    }
    current->push_back(line);
  }
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    if (!loaded[i].empty()) pool.per_task_[i] = std::move(loaded[i]);
  }
  if (!loaded_pretrain.empty()) pool.pretrain_ = std::move(loaded_pretrain);
  pool.Validate();
  return pool;
}

const std::vector<std::string>& PromptPool::Templates(TaskKind task) const {
  return per_task_[static_cast<int>(task)];
}

std::string PromptPool::Draw(TaskKind task, Rng& rng) const {
  const auto& pool = Templates(task);
  return std::string(TaskDescriptor(task)) + " " +
         pool[UniformIndex(rng, pool.size())];
}

std::string PromptPool::DrawPretrain(Rng& rng) const {
  return std::string(TaskDescriptor(TaskKind::kVqa)) + " " +
         pretrain_[UniformIndex(rng, pretrain_.size())];
}

void PromptPool::Validate() const {
  auto check = [](const std::vector<std::string>& pool, std::string_view name) {
    if (pool.size() < kMinTemplates) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(name) + " pool needs at least " +
                      std::to_string(kMinTemplates) + " templates");
    }
    for (const std::string& t : pool) {
      if (t.find(kSketchToken) == std::string::npos) {
        throw Error(ErrorCode::kInvalidArgument,
                    std::string(name) + " template lacks " +
                        std::string(kSketchToken) + ": " + t);
      }
    }
  };
  for (TaskKind task : kAllTaskKinds) {
    check(Templates(task), TaskDescriptor(task));
  }
  check(pretrain_, "PRETRAIN");
}

}  // namespace sketchforge
