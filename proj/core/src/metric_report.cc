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

#include "sketchforge/metric_report.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "sketchforge/error.h"

namespace sketchforge {
namespace {

constexpr const char* kAvg = "Avg.";

std::string Fixed1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

// Enum order for known sources, then everything else by name.
int SourceRank(const std::string& name) {
  if (auto s = SketchSourceFromName(name)) return static_cast<int>(*s);
  return 100;
}

nlohmann::json ScoresToJson(const NamedScores& scores) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [name, value] : scores) {
    j.push_back({{"metric", name}, {"value", value}});
  }
  return j;
}

NamedScores ScoresFromJson(const nlohmann::json& j) {
  NamedScores out;
  for (const auto& e : j) {
    out.emplace_back(e.at("metric").get<std::string>(),
                     e.at("value").get<double>());
  }
  return out;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::optional<double> MetricReport::Score(const std::string& source,
                                          const std::string& metric) const {
  for (const MetricRow& row : rows) {
    if (row.sketch_source != source) continue;
    for (const auto& [name, value] : row.scores) {
      if (name == metric) return value;
    }
  }
  if (source == "All" && rows.empty()) {
    for (const auto& [name, value] : overall) {
      if (name == metric) return value;
    }
  }
  return std::nullopt;
}

void to_json(nlohmann::json& j, const MetricReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const MetricRow& row : report.rows) {
    rows.push_back({{"sketch_source", row.sketch_source},
                    {"samples", row.samples},
                    {"scores", ScoresToJson(row.scores)}});
  }
  j = nlohmann::json{{"task", TaskDescriptor(report.task)},
                     {"label", report.label},
                     {"dataset", report.dataset},
                     {"rows", rows},
                     {"overall", ScoresToJson(report.overall)},
                     {"samples", report.samples},
                     {"unparseable", report.unparseable},
                     {"missing", report.missing},
                     {"dropped_boxes", report.dropped_boxes}};
}

void from_json(const nlohmann::json& j, MetricReport& report) {
  const std::string task = j.at("task").get<std::string>();
  auto kind = TaskKindFromDescriptor(task);
  if (!kind) throw Error(ErrorCode::kParse, "unknown task " + task);
  report.task = *kind;
  report.label = j.value("label", std::string());
  report.dataset = j.value("dataset", std::string());
  report.rows.clear();
  for (const auto& r : j.at("rows")) {
    MetricRow row;
    row.sketch_source = r.at("sketch_source").get<std::string>();
    row.samples = r.value("samples", std::size_t{0});
    row.scores = ScoresFromJson(r.at("scores"));
    report.rows.push_back(std::move(row));
  }
  report.overall = ScoresFromJson(j.value("overall", nlohmann::json::array()));
  report.samples = j.value("samples", std::size_t{0});
  report.unparseable = j.value("unparseable", std::size_t{0});
  report.missing = j.value("missing", std::size_t{0});
  report.dropped_boxes = j.value("dropped_boxes", std::size_t{0});
}

std::string MetricReportCsv(const MetricReport& report) {
  std::ostringstream out;
  out << "task,label,dataset,sketch_source,samples,metric,value\n";
  auto emit = [&](const std::string& source, std::size_t n,
                  const NamedScores& scores) {
    for (const auto& [name, value] : scores) {
      out << TaskDescriptor(report.task) << ',' << CsvField(report.label)
          << ',' << CsvField(report.dataset) << ',' << CsvField(source) << ','
          << n << ',' << CsvField(name) << ',' << Fixed1(value) << '\n';
    }
  };
  for (const MetricRow& row : report.rows) {
    emit(row.sketch_source, row.samples, row.scores);
  }
  emit("overall", report.samples, report.overall);
  return out.str();
}

ReportTables EmitReport(std::span<const MetricReport> reports,
                        const std::string& metric) {
  if (reports.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no reports to emit");
  }
  for (const MetricReport& r : reports) {
    if (r.task != reports.front().task) {
      throw Error(ErrorCode::kMixedTasks,
                  "reports mix tasks " +
                      std::string(TaskDescriptor(reports.front().task)) +
                      " and " + std::string(TaskDescriptor(r.task)));
    }
  }

  std::vector<std::string> labels;
  std::vector<std::string> datasets;
  std::map<std::string, std::vector<std::string>> sources;
  for (const MetricReport& r : reports) {
    if (std::find(labels.begin(), labels.end(), r.label) == labels.end()) {
      labels.push_back(r.label);
    }
    if (std::find(datasets.begin(), datasets.end(), r.dataset) ==
        datasets.end()) {
      datasets.push_back(r.dataset);
    }
    auto& list = sources[r.dataset];
    for (const MetricRow& row : r.rows) {
      if (std::find(list.begin(), list.end(), row.sketch_source) ==
          list.end()) {
        list.push_back(row.sketch_source);
      }
    }
  }
  for (auto& [dataset, list] : sources) {
    std::stable_sort(list.begin(), list.end(),
                     [](const std::string& a, const std::string& b) {
                       const int ra = SourceRank(a);
                       const int rb = SourceRank(b);
                       return ra != rb ? ra < rb : a < b;
                     });
  }

  auto column = [](const std::string& dataset, const std::string& name) {
    return dataset.empty() ? name : dataset + "/" + name;
  };
  std::vector<std::string> header = {"Model"};
  for (const std::string& d : datasets) {
    for (const std::string& s : sources[d]) header.push_back(column(d, s));
    header.push_back(column(d, kAvg));
  }

  std::vector<std::vector<std::string>> lines;
  for (const std::string& label : labels) {
    std::vector<std::string> line = {label};
    for (const std::string& d : datasets) {
      const MetricReport* report = nullptr;
      for (const MetricReport& r : reports) {
        if (r.label == label && r.dataset == d) report = &r;
      }
      double sum = 0.0;
      int n = 0;
      for (const std::string& s : sources[d]) {
        std::optional<double> v;
        if (report != nullptr) v = report->Score(s, metric);
        if (v) {
          sum += *v;
          ++n;
        }
        line.push_back(v ? Fixed1(*v) : "-");
      }
      line.push_back(n > 0 ? Fixed1(sum / n) : "-");
    }
    lines.push_back(std::move(line));
  }

  ReportTables tables;
  std::ostringstream csv;
  for (std::size_t i = 0; i < header.size(); ++i) {
    csv << (i ? "," : "") << CsvField(header[i]);
  }
  csv << '\n';
  for (const auto& line : lines) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      csv << (i ? "," : "") << CsvField(line[i]);
    }
    csv << '\n';
  }
  tables.csv = csv.str();

  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) {
    width[i] = std::max<std::size_t>(3, header[i].size());
    for (const auto& line : lines) width[i] = std::max(width[i], line[i].size());
  }
  std::ostringstream md;
  auto pad = [&](const std::string& s, std::size_t i, bool right) {
    const std::string fill(width[i] - s.size(), ' ');
    return right ? fill + s : s + fill;
  };
  md << "**" << TaskDescriptor(reports.front().task) << " - " << metric
     << "**\n\n|";
  for (std::size_t i = 0; i < header.size(); ++i) {
    md << ' ' << pad(header[i], i, i > 0) << " |";
  }
  md << "\n|";
  for (std::size_t i = 0; i < header.size(); ++i) {
    md << ' ' << (i == 0 ? std::string(width[i], '-')
                         : std::string(width[i] - 1, '-') + ":")
       << " |";
  }
  md << '\n';
  for (const auto& line : lines) {
    md << '|';
    for (std::size_t i = 0; i < line.size(); ++i) {
      md << ' ' << pad(line[i], i, i > 0) << " |";
    }
    md << '\n';
  }
  tables.markdown = md.str();
  return tables;
}

}  // namespace sketchforge
