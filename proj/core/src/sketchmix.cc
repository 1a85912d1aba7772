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

#include "sketchforge/sketchmix.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "sketchforge/error.h"
#include "sketchforge/random.h"

namespace sketchforge {
namespace {

constexpr SketchSource kPrimary = SketchSource::kSketchVclO365;

std::size_t Get(const SourceCounts& counts, SketchSource s) {
  auto it = counts.find(s);
  return it == counts.end() ? 0 : it->second;
}

// Hands out `units` one at a time, cycling through sources in enum order
// and skipping sources at capacity. Returns the units actually placed.
std::size_t SpreadEvenly(std::size_t units, const SourceCounts& caps,
                         SourceCounts& take) {
  std::size_t placed = 0;
  bool progress = true;
  while (placed < units && progress) {
    progress = false;
    for (const auto& [source, cap] : caps) {
      if (placed == units) break;
      if (take[source] < cap) {
        ++take[source];
        ++placed;
        progress = true;
      }
    }
  }
  return placed;
}

}  // namespace

void PoolSpec::Validate() const {
  if (min_per_class < 1 || shared_primary_quota < 0 ||
      shared_other_quota < 0) {
    throw Error(ErrorCode::kInvalidArgument, "pool quotas must be positive");
  }
  if (exclusive_quota != min_per_class) {
    throw Error(ErrorCode::kInvalidArgument,
                "exclusive_quota must equal min_per_class");
  }
  if (shared_primary_quota + shared_other_quota != min_per_class) {
    throw Error(ErrorCode::kInvalidArgument,
                "shared quotas must sum to min_per_class");
  }
}

std::map<int, Availability> GroupByClass(
    std::span<const SketchRecord> sketches) {
  std::map<int, Availability> out;
  for (const SketchRecord& s : sketches) out[s.class_id][s.source].push_back(s);
  return out;
}

SourceCounts CountAvailability(const Availability& availability) {
  SourceCounts counts;
  for (const auto& [source, list] : availability) {
    if (!list.empty()) counts[source] = list.size();
  }
  return counts;
}

SourceCounts PlanClassPool(const SourceCounts& available,
                           const PoolSpec& spec) {
  spec.Validate();
  SourceCounts take;
  const std::size_t primary = Get(available, kPrimary);
  SourceCounts others;
  for (const auto& [source, n] : available) {
    if (source != kPrimary && n > 0) others[source] = n;
  }
  if (others.empty()) {
    const std::size_t n =
        std::min<std::size_t>(primary, spec.exclusive_quota);
    if (n > 0) take[kPrimary] = n;
    return take;
  }
  std::size_t from_primary =
      std::min<std::size_t>(primary, spec.shared_primary_quota);
  const std::size_t other_target =
      spec.shared_other_quota + (spec.shared_primary_quota - from_primary);
  SourceCounts other_take;
  for (const auto& [source, n] : others) other_take[source] = 0;
  const std::size_t placed = SpreadEvenly(other_target, others, other_take);
  from_primary += std::min(primary - from_primary, other_target - placed);
  if (from_primary > 0) take[kPrimary] = from_primary;
  for (const auto& [source, n] : other_take) {
    if (n > 0) take[source] = n;
  }
  return take;
}

std::vector<SketchRecord> AssembleClassPool(int class_id,
                                            const Availability& availability,
                                            const PoolSpec& spec,
                                            std::uint64_t seed) {
  const SourceCounts counts = CountAvailability(availability);
  if (counts.empty()) {
    throw Error(ErrorCode::kEmptyPool,
                "class " + std::to_string(class_id) + " has no sketches");
  }
  const SourceCounts plan = PlanClassPool(counts, spec);
  Rng rng(DeriveSeed(seed, {static_cast<std::uint64_t>(class_id)}));
  std::vector<SketchRecord> pool;
  for (const auto& [source, n] : plan) {
    const auto& list = availability.at(source);
    for (std::size_t i : SampleWithoutReplacement(rng, list.size(), n)) {
      pool.push_back(list[i]);
    }
  }
  return pool;
}

std::size_t PoolAudit::ViolationCount() const {
  std::size_t n = 0;
  for (const auto& c : classes) n += c.violations.size();
  return n;
}

std::size_t PoolAudit::RangeFlagCount() const {
  return static_cast<std::size_t>(std::count_if(
      classes.begin(), classes.end(),
      [](const ClassAudit& c) { return c.range_flag; }));
}

std::string PoolAudit::ToCsv() const {
  std::ostringstream out;
  out << "class_id,size,exclusive";
  for (SketchSource s : kAllSketchSources) out << ',' << SketchSourceName(s);
  out << ",range_flag,violations\n";
  for (const ClassAudit& c : classes) {
    out << c.class_id << ',' << c.size << ',' << (c.exclusive ? 1 : 0);
    for (SketchSource s : kAllSketchSources) out << ',' << Get(c.composition, s);
    out << ',' << (c.range_flag ? 1 : 0) << ',';
    for (std::size_t i = 0; i < c.violations.size(); ++i) {
      out << (i ? ";" : "") << c.violations[i];
    }
    out << '\n';
  }
  return out.str();
}

PoolAudit AuditPools(const std::map<int, std::vector<SketchRecord>>& pools,
                     const PoolSpec& spec,
                     const std::map<int, SourceCounts>* availability) {
  spec.Validate();
  PoolAudit audit;
  for (const auto& [class_id, pool] : pools) {
    ClassAudit ca;
    ca.class_id = class_id;
    ca.size = pool.size();
    std::set<std::string> ids;
    for (const SketchRecord& s : pool) {
      ++ca.composition[s.source];
      if (!ids.insert(s.id).second) {
        ca.violations.push_back("duplicate:" + s.id);
      }
      if (s.class_id != class_id) {
        ca.violations.push_back("foreign_class:" + s.id);
      }
    }

    // Supply per source; "ample" when unknown.
    const SourceCounts* avail = nullptr;
    if (availability != nullptr) {
      auto it = availability->find(class_id);
      static const SourceCounts kNone;
      avail = it == availability->end() ? &kNone : &it->second;
    }
    constexpr std::size_t kAmple = static_cast<std::size_t>(-1) / 4;
    auto supply = [&](SketchSource s) {
      return avail == nullptr ? kAmple : Get(*avail, s);
    };

    for (const auto& [source, n] : ca.composition) {
      if (n > supply(source)) {
        ca.violations.push_back(std::string("over_supply:") +
                                std::string(SketchSourceName(source)));
      }
    }

    bool shared = false;
    if (avail != nullptr) {
      for (const auto& [source, n] : *avail) {
        shared = shared || (source != kPrimary && n > 0);
      }
    } else {
      for (const auto& [source, n] : ca.composition) {
        shared = shared || source != kPrimary;
      }
    }
    ca.exclusive = !shared;

    const std::size_t primary = Get(ca.composition, kPrimary);
    const std::size_t others = ca.size - primary;
    std::size_t total_supply = 0;
    std::size_t other_supply = 0;
    if (avail == nullptr) {
      total_supply = other_supply = kAmple;
    } else {
      for (const auto& [source, n] : *avail) {
        total_supply += n;
        if (source != kPrimary) other_supply += n;
      }
    }

    const std::size_t floor_size =
        std::min<std::size_t>(spec.min_per_class, total_supply);
    if (ca.size < floor_size) ca.violations.push_back("under_minimum");

    if (ca.exclusive) {
      if (others > 0) ca.violations.push_back("exclusive_not_primary");
      const std::size_t want = std::min<std::size_t>(
          spec.exclusive_quota, supply(kPrimary));
      if (primary != want) ca.violations.push_back("exclusive_quota");
    } else {
      const std::size_t primary_supply = supply(kPrimary);
      const std::size_t primary_floor = std::min<std::size_t>(
          spec.shared_primary_quota, primary_supply);
      // The primary source may exceed its share only to cover a shortage on
      // the other side, and vice versa.
      const bool others_exhausted = others == other_supply;
      const bool primary_exhausted = primary == primary_supply;
      if (primary < primary_floor) ca.violations.push_back("split_primary_low");
      if (primary > static_cast<std::size_t>(spec.shared_primary_quota) &&
          !others_exhausted) {
        ca.violations.push_back("split_primary_high");
      }
      if (others > static_cast<std::size_t>(spec.shared_other_quota) &&
          !primary_exhausted) {
        ca.violations.push_back("split_other_high");
      }
      if (ca.size > static_cast<std::size_t>(spec.min_per_class)) {
        ca.violations.push_back("over_quota");
      }
      // Even spread: a source may trail another by more than one only when
      // it has run out.
      for (SketchSource a : kAllSketchSources) {
        if (a == kPrimary || supply(a) == 0) continue;
        for (SketchSource b : kAllSketchSources) {
          if (b == kPrimary || b == a) continue;
          const std::size_t na = Get(ca.composition, a);
          const std::size_t nb = Get(ca.composition, b);
          if (na + 1 < nb && na < supply(a)) {
            ca.violations.push_back(std::string("uneven:") +
                                    std::string(SketchSourceName(a)));
            break;
          }
        }
      }
    }

    ca.range_flag = ca.size < static_cast<std::size_t>(spec.range_lo) ||
                    ca.size > static_cast<std::size_t>(spec.range_hi);
    audit.classes.push_back(std::move(ca));
  }
  return audit;
}

}  // namespace sketchforge
