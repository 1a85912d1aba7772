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

#include "config.h"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "sketchforge/error.h"
#include "sketchforge/jsonl.h"

namespace sketchforge::cli {
namespace fs = std::filesystem;
namespace {

[[noreturn]] void Invalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidArgument, message);
}

std::optional<fs::path> ConfigDir() {
  const char* dir = std::getenv(kConfigDirEnv);
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return fs::path(dir);
}

}  // namespace

std::string SectionKey(const std::string& subcommand) {
  std::string key = subcommand;
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

RunConfig RunConfig::Load(const std::optional<std::string>& path,
                          const std::string& subcommand) {
  std::vector<fs::path> candidates;
  const auto dir = ConfigDir();
  if (path) {
    candidates.emplace_back(*path);
    if (dir && fs::path(*path).is_relative()) candidates.push_back(*dir / *path);
  } else if (dir) {
    candidates.push_back(*dir / (subcommand + ".json"));
    candidates.push_back(*dir / "sketchforge.json");
  } else {
    Invalid(std::string("no --config given and ") + kConfigDirEnv +
            " is unset");
  }
  for (const fs::path& c : candidates) {
    if (!fs::is_regular_file(c)) continue;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(ReadTextFile(c));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, c.string() + ": " + e.what());
    }
    return FromJson(std::move(doc), fs::absolute(c).parent_path(), subcommand);
  }
  std::string tried;
  for (const fs::path& c : candidates) {
    tried += (tried.empty() ? "" : ", ") + c.string();
  }
  Invalid("config file not found (tried " + tried + ")");
}

RunConfig RunConfig::FromJson(nlohmann::json doc, fs::path base_dir,
                              const std::string& subcommand) {
  if (!doc.is_object()) Invalid("config must be a JSON object");
  RunConfig c;
  c.doc_ = std::move(doc);
  c.base_dir_ = std::move(base_dir);
  c.subcommand_ = subcommand;
  c.section_key_ = SectionKey(subcommand);
  if (c.doc_.contains(c.section_key_) && !c.doc_[c.section_key_].is_object()) {
    Invalid("config section '" + c.section_key_ + "' must be an object");
  }
  c.seed();
  c.workers();
  return c;
}

void RunConfig::ApplyOverride(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    Invalid("override '" + assignment + "' is not of the form key=value");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  nlohmann::json value = nlohmann::json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  nlohmann::json* node = &doc_;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot - start);
    if (part.empty()) Invalid("override key '" + key + "' has an empty part");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      break;
    }
    nlohmann::json& child = (*node)[part];
    if (child.is_null()) child = nlohmann::json::object();
    if (!child.is_object()) {
      Invalid("override '" + key + "' descends into non-object '" + part + "'");
    }
    node = &child;
    start = dot + 1;
  }
  seed();
  workers();
}

void RunConfig::SetSeed(std::uint64_t seed) { doc_["seed"] = seed; }

void RunConfig::SetWorkers(int workers) {
  doc_["workers"] = workers;
  this->workers();
}

std::uint64_t RunConfig::seed() const {
  if (!doc_.contains("seed")) return 0;
  const nlohmann::json& s = doc_["seed"];
  if (s.is_number_unsigned()) return s.get<std::uint64_t>();
  if (s.is_number_integer() && s.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(s.get<std::int64_t>());
  }
  Invalid("seed must be a non-negative integer");
}

int RunConfig::workers() const {
  if (!doc_.contains("workers")) return 1;
  const nlohmann::json& w = doc_["workers"];
  if (!w.is_number_integer() || w.get<std::int64_t>() < 1 ||
      w.get<std::int64_t>() > 1024) {
    Invalid("workers must be an integer in [1, 1024]");
  }
  return w.get<int>();
}

const nlohmann::json& RunConfig::section() const {
  static const nlohmann::json kEmpty = nlohmann::json::object();
  auto it = doc_.find(section_key_);
  return it == doc_.end() ? kEmpty : *it;
}

bool RunConfig::Has(const std::string& key) const {
  return section().contains(key) && !section()[key].is_null();
}

const nlohmann::json& RunConfig::Value(const std::string& key) const {
  if (!Has(key)) Invalid(section_key_ + "." + key + " is required");
  return section()[key];
}

std::string RunConfig::GetString(const std::string& key) const {
  const nlohmann::json& v = Value(key);
  if (!v.is_string()) Invalid(section_key_ + "." + key + " must be a string");
  return v.get<std::string>();
}

std::string RunConfig::GetString(const std::string& key,
                                 const std::string& fallback) const {
  return Has(key) ? GetString(key) : fallback;
}

double RunConfig::GetDouble(const std::string& key, double fallback) const {
  if (!Has(key)) return fallback;
  const nlohmann::json& v = Value(key);
  if (!v.is_number()) Invalid(section_key_ + "." + key + " must be a number");
  return v.get<double>();
}

std::int64_t RunConfig::GetInt(const std::string& key,
                               std::int64_t fallback) const {
  if (!Has(key)) return fallback;
  const nlohmann::json& v = Value(key);
  if (!v.is_number_integer()) {
    Invalid(section_key_ + "." + key + " must be an integer");
  }
  return v.get<std::int64_t>();
}

bool RunConfig::GetBool(const std::string& key, bool fallback) const {
  if (!Has(key)) return fallback;
  const nlohmann::json& v = Value(key);
  if (!v.is_boolean()) Invalid(section_key_ + "." + key + " must be a boolean");
  return v.get<bool>();
}

fs::path RunConfig::Resolve(const std::string& path) const {
  fs::path p(path);
  return p.is_absolute() ? p : base_dir_ / p;
}

fs::path RunConfig::InputPath(const std::string& key) const {
  const fs::path p = Resolve(GetString(key));
  if (!fs::exists(p)) {
    Invalid(section_key_ + "." + key + ": " + p.string() + " does not exist");
  }
  return p;
}

std::optional<fs::path> RunConfig::OptionalInputPath(
    const std::string& key) const {
  if (!Has(key)) return std::nullopt;
  return InputPath(key);
}

fs::path RunConfig::OutputDir() const {
  if (Has("output_dir")) return Resolve(GetString("output_dir"));
  const std::string root = doc_.contains("output_dir")
                               ? doc_["output_dir"].get<std::string>()
                               : std::string("sketchforge-out");
  return Resolve(root) / section_key_;
}

nlohmann::json RunConfig::Snapshot() const {
  nlohmann::json snap = doc_;
  snap.erase("workers");
  snap.erase("output_dir");
  for (auto& [key, value] : snap.items()) {
    if (value.is_object()) value.erase("output_dir");
  }
  return snap;
}

}  // namespace sketchforge::cli
