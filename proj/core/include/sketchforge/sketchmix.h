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

// SketchMIX class pools: per-class sketch sets drawn from several sources
// under fixed quotas.
//
// A class held only by SketchVCL-O365 takes up to exclusive_quota sketches
// from it. A class also held by other sources takes shared_primary_quota
// from SketchVCL-O365 and shared_other_quota spread as evenly as possible
// across the other sources (leftover units go to sources in enum order).
// When one side cannot supply its share, the other side makes up the
// difference as far as it can.

#ifndef SKETCHFORGE_SKETCHMIX_H_
#define SKETCHFORGE_SKETCHMIX_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sketchforge/records.h"

namespace sketchforge {

struct PoolSpec {
  int min_per_class = 200;
  int exclusive_quota = 200;
  int shared_primary_quota = 50;
  int shared_other_quota = 150;
  // Informational bounds on the pool size.
  int range_lo = 200;
  int range_hi = 350;

  void Validate() const;
};

using SourceCounts = std::map<SketchSource, std::size_t>;
using Availability = std::map<SketchSource, std::vector<SketchRecord>>;

// Per-class availability, grouped by class then source.
std::map<int, Availability> GroupByClass(
    std::span<const SketchRecord> sketches);

SourceCounts CountAvailability(const Availability& availability);

// Number of sketches to take from each source.
SourceCounts PlanClassPool(const SourceCounts& available,
                           const PoolSpec& spec);

// Samples the planned counts without replacement using a seed derived from
// (seed, class_id). Throws kEmptyPool when nothing is available.
std::vector<SketchRecord> AssembleClassPool(int class_id,
                                            const Availability& availability,
                                            const PoolSpec& spec,
                                            std::uint64_t seed);

struct ClassAudit {
  int class_id = 0;
  std::size_t size = 0;
  SourceCounts composition;
  bool exclusive = false;
  std::vector<std::string> violations;
  bool range_flag = false;
};

struct PoolAudit {
  std::vector<ClassAudit> classes;

  std::size_t ViolationCount() const;
  std::size_t RangeFlagCount() const;
  std::string ToCsv() const;
};

// Checks each pool against the quota rules. With availability the checks
// account for short supply; without it, supply is assumed ample.
PoolAudit AuditPools(const std::map<int, std::vector<SketchRecord>>& pools,
                     const PoolSpec& spec,
                     const std::map<int, SourceCounts>* availability =
                         nullptr);

}  // namespace sketchforge

#endif  // SKETCHFORGE_SKETCHMIX_H_
