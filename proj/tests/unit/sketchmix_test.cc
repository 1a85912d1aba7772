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

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "sketchforge/error.h"
#include "sketchforge/sketchmix.h"

namespace sketchforge {
namespace {

using S = SketchSource;

std::vector<SketchRecord> Make(int class_id, S source, int n) {
  std::vector<SketchRecord> out;
  for (int i = 0; i < n; ++i) {
    out.push_back({std::string(SketchSourceName(source)) + "-" +
                       std::to_string(class_id) + "-" + std::to_string(i),
                   class_id, source, "", std::nullopt});
  }
  return out;
}

Availability Avail(int class_id, std::initializer_list<std::pair<S, int>> spec) {
  Availability a;
  for (auto [s, n] : spec) a[s] = Make(class_id, s, n);
  return a;
}

SourceCounts Composition(const std::vector<SketchRecord>& pool) {
  SourceCounts c;
  for (const auto& s : pool) ++c[s.source];
  return c;
}

TEST(PlanClassPool, ExclusiveClassTakesTwoHundred) {
  const auto pool = AssembleClassPool(3, Avail(3, {{S::kSketchVclO365, 500}}), {}, 1);
  EXPECT_EQ(pool.size(), 200u);
  EXPECT_EQ(Composition(pool), (SourceCounts{{S::kSketchVclO365, 200}}));
}

TEST(PlanClassPool, SharedClassSplitsFiftyAndOneFifty) {
  const SourceCounts plan = PlanClassPool(
      {{S::kSketchVclO365, 400}, {S::kSketchy, 400}, {S::kQuickDraw, 400}}, {});
  EXPECT_EQ(plan, (SourceCounts{{S::kSketchVclO365, 50},
                                {S::kSketchy, 75},
                                {S::kQuickDraw, 75}}));
}

TEST(PlanClassPool, ShortSideIsMadeUp) {
  EXPECT_EQ(PlanClassPool({{S::kSketchVclO365, 400}, {S::kSketchy, 30}}, {}),
            (SourceCounts{{S::kSketchVclO365, 170}, {S::kSketchy, 30}}));
  EXPECT_EQ(PlanClassPool({{S::kSketchVclO365, 20}, {S::kSketchy, 400}}, {}),
            (SourceCounts{{S::kSketchVclO365, 20}, {S::kSketchy, 180}}));
  // Not enough anywhere: take everything.
  EXPECT_EQ(PlanClassPool({{S::kSketchVclO365, 20}, {S::kSketchy, 100}}, {}),
            (SourceCounts{{S::kSketchVclO365, 20}, {S::kSketchy, 100}}));
}

TEST(PlanClassPool, OddShareGoesToEarlierSource) {
  const SourceCounts plan = PlanClassPool({{S::kSketchVclO365, 400},
                                           {S::kSketchVclOi, 400},
                                           {S::kSketchy, 400},
                                           {S::kQuickDraw, 400},
                                           {S::kSketchVclC, 400}},
                                          {});
  EXPECT_EQ(plan.at(S::kSketchVclOi), 38u);
  EXPECT_EQ(plan.at(S::kSketchVclC), 38u);
  EXPECT_EQ(plan.at(S::kSketchy), 37u);
  EXPECT_EQ(plan.at(S::kQuickDraw), 37u);
}

TEST(AssembleClassPool, EmptyPool) {
  try {
    AssembleClassPool(1, {}, {}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyPool);
  }
}

TEST(PoolSpec, Validation) {
  PoolSpec bad;
  bad.shared_other_quota = 100;
  EXPECT_THROW(bad.Validate(), Error);
  bad = PoolSpec{};
  bad.exclusive_quota = 150;
  EXPECT_THROW(bad.Validate(), Error);
}

TEST(AuditPools, FlagsSplitViolation) {
  std::map<int, std::vector<SketchRecord>> pools;
  auto& pool = pools[0];
  for (const auto& s : Make(0, S::kSketchVclO365, 60)) pool.push_back(s);
  for (const auto& s : Make(0, S::kSketchy, 140)) pool.push_back(s);
  const PoolAudit audit = AuditPools(pools, {});
  EXPECT_GE(audit.ViolationCount(), 1u);
  const auto& v = audit.classes[0].violations;
  EXPECT_NE(std::find(v.begin(), v.end(), "split_primary_high"), v.end());
}

TEST(AuditPools, DuplicatesAndForeignClasses) {
  std::map<int, std::vector<SketchRecord>> pools;
  pools[0] = Make(0, S::kSketchVclO365, 199);
  pools[0].push_back(pools[0].front());
  pools[0].push_back(Make(1, S::kSketchVclO365, 1)[0]);
  const PoolAudit audit = AuditPools(pools, {});
  const auto& v = audit.classes[0].violations;
  EXPECT_NE(std::find(v.begin(), v.end(), "duplicate:" + pools[0][0].id), v.end());
  EXPECT_NE(std::find(v.begin(), v.end(), "foreign_class:" + pools[0].back().id),
            v.end());
}

TEST(AuditPools, RangeIsOnlyFlagged) {
  PoolSpec spec;
  spec.min_per_class = spec.exclusive_quota = 380;
  spec.shared_other_quota = 330;
  std::map<int, std::vector<SketchRecord>> pools;
  pools[0] = AssembleClassPool(0, Avail(0, {{S::kSketchVclO365, 400}}), spec, 1);
  ASSERT_EQ(pools[0].size(), 380u);
  const PoolAudit audit = AuditPools(pools, spec);
  EXPECT_EQ(audit.ViolationCount(), 0u);
  EXPECT_EQ(audit.RangeFlagCount(), 1u);
  EXPECT_EQ(audit.ToCsv().substr(0, 25), "class_id,size,exclusive,S");
}

TEST(AssembleClassPool, GeneratedPoolsPassAudit) {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<int> supply(0, 260);
  std::bernoulli_distribution present(0.5);
  std::map<int, std::vector<SketchRecord>> pools;
  std::map<int, SourceCounts> avail;
  for (int c = 0; c < 120; ++c) {
    Availability a;
    for (S s : kAllSketchSources) {
      if (s != S::kSketchVclO365 && !present(rng)) continue;
      const int n = supply(rng);
      if (n > 0) a[s] = Make(c, s, n);
    }
    if (a.empty()) continue;
    avail[c] = CountAvailability(a);
    pools[c] = AssembleClassPool(c, a, {}, 99);
    std::size_t total = 0;
    for (const auto& [s, n] : avail[c]) total += n;
    EXPECT_EQ(pools[c].size(), std::min<std::size_t>(200, total));
    const auto again = AssembleClassPool(c, a, {}, 99);
    ASSERT_EQ(again.size(), pools[c].size());
    for (std::size_t i = 0; i < again.size(); ++i) {
      EXPECT_EQ(again[i].id, pools[c][i].id);
    }
  }
  const PoolAudit audit = AuditPools(pools, {}, &avail);
  for (const auto& c : audit.classes) {
    EXPECT_TRUE(c.violations.empty()) << c.class_id << ": " << c.violations[0];
  }
}

}  // namespace
}  // namespace sketchforge
