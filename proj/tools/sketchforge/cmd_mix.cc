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

#include <map>
#include <sstream>

#include "commands.h"
#include "run_manifest.h"
#include "sketchforge/error.h"
#include "sketchforge/jsonl.h"
#include "sketchforge/parallel.h"
#include "sketchforge/sketchmix.h"
#include "sketchforge/taxonomy.h"

namespace sketchforge::cli {
namespace fs = std::filesystem;
namespace {

PoolSpec ReadPoolSpec(const RunConfig& config) {
  PoolSpec spec;
  auto get = [&](const char* key, int fallback) {
    return static_cast<int>(config.GetInt(key, fallback));
  };
  spec.min_per_class = get("min_per_class", spec.min_per_class);
  spec.exclusive_quota = get("exclusive_quota", spec.exclusive_quota);
  spec.shared_primary_quota =
      get("shared_primary_quota", spec.shared_primary_quota);
  spec.shared_other_quota = get("shared_other_quota", spec.shared_other_quota);
  spec.range_lo = get("range_lo", spec.range_lo);
  spec.range_hi = get("range_hi", spec.range_hi);
  spec.Validate();
  return spec;
}

std::vector<fs::path> SketchInputs(const RunConfig& config) {
  const nlohmann::json& v = config.section()["sketches"];
  if (v.is_string()) return {config.InputPath("sketches")};
  if (!v.is_array() || v.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "mix_build.sketches must be a path or a non-empty list");
  }
  std::vector<fs::path> out;
  for (const auto& e : v) {
    const fs::path p = config.Resolve(e.get<std::string>());
    if (!fs::exists(p)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "mix_build.sketches: " + p.string() + " does not exist");
    }
    out.push_back(p);
  }
  return out;
}

std::map<int, std::vector<SketchRecord>> GroupPools(
    const std::vector<SketchRecord>& records) {
  std::map<int, std::vector<SketchRecord>> pools;
  for (const SketchRecord& r : records) pools[r.class_id].push_back(r);
  return pools;
}

std::map<int, SourceCounts> SupplyCounts(
    const std::vector<SketchRecord>& supply) {
  std::map<int, SourceCounts> out;
  for (const auto& [cls, avail] : GroupByClass(supply)) {
    out[cls] = CountAvailability(avail);
  }
  return out;
}

void Summarize(const PoolAudit& audit, const PoolSpec& spec,
               RunManifest& run) {
  std::size_t below = 0;
  for (const ClassAudit& c : audit.classes) {
    below += c.size < static_cast<std::size_t>(spec.min_per_class);
  }
  run.summary()["classes"] = audit.classes.size();
  run.summary()["violations"] = audit.ViolationCount();
  run.summary()["range_flags"] = audit.RangeFlagCount();
  run.summary()["classes_below_minimum"] = below;
}

}  // namespace

int RunMixBuild(const RunConfig& config) {
  if (!config.Has("sketches")) {
    throw Error(ErrorCode::kInvalidArgument, "mix_build.sketches is required");
  }
  const std::vector<fs::path> inputs = SketchInputs(config);
  const PoolSpec spec = ReadPoolSpec(config);
  const double threshold =
      config.GetDouble("similarity_threshold", kDefaultSimilarityThreshold);

  std::vector<SketchRecord> supply;
  for (const fs::path& p : inputs) {
    auto records = LoadSketches(p);
    supply.insert(supply.end(), records.begin(), records.end());
  }

  // Sources listed under source_classes carry source-local class ids that
  // are mapped onto the parent taxonomy by name.
  std::ostringstream map_csv;
  map_csv << "source,source_class_id,source_class,parent_id,parent_class,"
             "score,method\n";
  std::size_t unmapped_sketches = 0;
  std::optional<fs::path> taxonomy_path;
  if (config.Has("source_classes")) {
    taxonomy_path = config.InputPath("taxonomy");
    Taxonomy taxonomy = LoadTaxonomy(*taxonomy_path);
    if (auto e = config.OptionalInputPath("embeddings")) {
      taxonomy.embeddings = LoadEmbeddings(*e);
    }
    std::map<SketchSource, std::vector<std::optional<int>>> remap;
    for (const auto& [name, file] : config.section()["source_classes"].items()) {
      const auto source = SketchSourceFromName(name);
      if (!source) {
        throw Error(ErrorCode::kInvalidArgument,
                    "mix_build.source_classes: unknown source " + name);
      }
      const fs::path names_path = config.Resolve(file.get<std::string>());
      const std::vector<std::string> names = LoadNameList(names_path);
      const auto matches = MapTaxonomy(names, taxonomy, threshold);
      auto& table = remap[*source];
      for (std::size_t i = 0; i < names.size(); ++i) {
        const TaxonomyMatch& m = matches[i];
        table.push_back(m.parent);
        map_csv << name << ',' << i << ',' << names[i] << ','
                << (m.parent ? std::to_string(*m.parent) : "") << ','
                << (m.parent ? taxonomy.parent_classes[*m.parent] : "") << ','
                << m.score << ','
                << (m.used_embeddings ? "embedding" : "lexical") << '\n';
      }
    }
    std::vector<SketchRecord> mapped;
    for (SketchRecord r : supply) {
      auto it = remap.find(r.source);
      if (it != remap.end()) {
        const auto& table = it->second;
        if (r.class_id < 0 || r.class_id >= static_cast<int>(table.size()) ||
            !table[r.class_id]) {
          ++unmapped_sketches;
          continue;
        }
        r.class_id = *table[r.class_id];
      }
      mapped.push_back(std::move(r));
    }
    supply = std::move(mapped);
  }

  const std::map<int, Availability> grouped = GroupByClass(supply);
  std::vector<int> class_ids;
  for (const auto& [cls, avail] : grouped) class_ids.push_back(cls);
  std::vector<std::vector<SketchRecord>> built(class_ids.size());
  ParallelFor(class_ids.size(), config.workers(), [&](std::size_t i) {
    built[i] = AssembleClassPool(class_ids[i], grouped.at(class_ids[i]), spec,
                                 config.seed());
  });
  std::map<int, std::vector<SketchRecord>> pools;
  std::vector<SketchRecord> flat;
  for (std::size_t i = 0; i < class_ids.size(); ++i) {
    flat.insert(flat.end(), built[i].begin(), built[i].end());
    pools[class_ids[i]] = std::move(built[i]);
  }
  const auto counts = SupplyCounts(supply);
  const PoolAudit audit = AuditPools(pools, spec, &counts);

  RunManifest run(config, config.OutputDir());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    run.AddInput("sketches[" + std::to_string(i) + "]", inputs[i]);
  }
  if (taxonomy_path) run.AddInput("taxonomy", *taxonomy_path);
  const nlohmann::json header = OutputHeader(config);
  run.WriteOutput("sketchmix.jsonl", ToJsonl(flat, header));
  run.WriteOutput("supply.jsonl", ToJsonl(supply, header));
  run.WriteOutput("audit.csv", audit.ToCsv());
  if (taxonomy_path) run.WriteOutput("taxonomy_map.csv", map_csv.str());
  Summarize(audit, spec, run);
  run.summary()["sketches"] = flat.size();
  run.summary()["unmapped_sketches"] = unmapped_sketches;
  run.Write();
  return kExitOk;
}

int RunMixAudit(const RunConfig& config) {
  const fs::path pool_path = config.InputPath("pool");
  const PoolSpec spec = ReadPoolSpec(config);
  const auto pools = GroupPools(LoadSketches(pool_path));
  std::optional<std::map<int, SourceCounts>> counts;
  const auto supply_path = config.OptionalInputPath("supply");
  if (supply_path) counts = SupplyCounts(LoadSketches(*supply_path));
  const PoolAudit audit =
      AuditPools(pools, spec, counts ? &*counts : nullptr);

  RunManifest run(config, config.OutputDir());
  run.AddInput("pool", pool_path);
  if (supply_path) run.AddInput("supply", *supply_path);
  run.WriteOutput("audit.csv", audit.ToCsv());
  Summarize(audit, spec, run);
  run.Write();
  return audit.ViolationCount() == 0 ? kExitOk : kExitPartial;
}

}  // namespace sketchforge::cli
