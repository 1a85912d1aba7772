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

#ifndef SKETCHFORGE_METRIC_REPORT_H_
#define SKETCHFORGE_METRIC_REPORT_H_

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sketchforge/records.h"

namespace sketchforge {

using NamedScores = std::vector<std::pair<std::string, double>>;

// Scores for the samples whose sketch came from one source.
struct MetricRow {
  std::string sketch_source;  // source name, or "All" when unresolved
  NamedScores scores;         // percentages; absent metrics are omitted
  std::size_t samples = 0;
};

struct MetricReport {
  TaskKind task = TaskKind::kCount;
  std::string label;    // run or model name
  std::string dataset;  // image dataset
  std::vector<MetricRow> rows;
  NamedScores overall;
  std::size_t samples = 0;
  std::size_t unparseable = 0;
  std::size_t missing = 0;
  std::size_t dropped_boxes = 0;

  std::optional<double> Score(const std::string& source,
                              const std::string& metric) const;
};

void to_json(nlohmann::json& j, const MetricReport& report);
void from_json(const nlohmann::json& j, MetricReport& report);

// Long format: one line per (row, metric).
std::string MetricReportCsv(const MetricReport& report);

struct ReportTables {
  std::string csv;
  std::string markdown;
};

// One line per report; for each dataset, one column per sketch source and a
// trailing "Avg." column holding the mean of that dataset's cells. Cells a
// report lacks print as "-" and stay out of the mean. Throws kMixedTasks
// when the reports disagree on task and kInvalidArgument when empty.
ReportTables EmitReport(std::span<const MetricReport> reports,
                        const std::string& metric);

}  // namespace sketchforge

#endif  // SKETCHFORGE_METRIC_REPORT_H_
