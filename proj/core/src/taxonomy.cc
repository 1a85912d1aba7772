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

#include "sketchforge/taxonomy.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "sketchforge/error.h"

namespace sketchforge {
namespace {

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::set<std::string> Tokens(const std::string& name) {
  std::set<std::string> out;
  std::string cur;
  for (unsigned char c : name) {
    if (std::isalnum(c)) {
      cur += static_cast<char>(std::tolower(c));
    } else if (!cur.empty()) {
      out.insert(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.insert(cur);
  return out;
}

double Jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t common = 0;
  for (const auto& t : a) common += b.count(t);
  return static_cast<double>(common) / (a.size() + b.size() - common);
}

double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::optional<int> Taxonomy::IndexOf(const std::string& name) const {
  for (std::size_t i = 0; i < parent_classes.size(); ++i) {
    if (parent_classes[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

Taxonomy LoadTaxonomy(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  Taxonomy taxonomy;
  std::set<std::string> seen;
  std::string line;
  while (std::getline(in, line)) {
    line = Trim(line);
    if (line.empty()) continue;
    if (!seen.insert(line).second) {
      throw Error(ErrorCode::kParse,
                  path.string() + ": duplicate parent class " + line);
    }
    taxonomy.parent_classes.push_back(line);
  }
  return taxonomy;
}

std::map<std::string, std::vector<double>> LoadEmbeddings(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::map<std::string, std::vector<double>> out;
  std::size_t dim = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    std::string name;
    std::string rest;
    if (auto tab = line.find('\t'); tab != std::string::npos) {
      name = Trim(line.substr(0, tab));
      rest = line.substr(tab + 1);
    } else {
      std::istringstream head(line);
      head >> name;
      std::getline(head, rest);
    }
    std::istringstream values(rest);
    std::vector<double> v;
    double x;
    while (values >> x) v.push_back(x);
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (!values.eof()) throw Error(ErrorCode::kParse, where + ": bad number");
    if (v.empty()) throw Error(ErrorCode::kParse, where + ": no vector");
    if (dim == 0) dim = v.size();
    if (v.size() != dim) {
      throw Error(ErrorCode::kParse, where + ": dimension mismatch");
    }
    const double norm = std::sqrt(Dot(v, v));
    if (!(norm > 0.0)) throw Error(ErrorCode::kParse, where + ": zero vector");
    for (double& c : v) c /= norm;
    out[name] = std::move(v);
  }
  return out;
}

std::vector<TaxonomyMatch> MapTaxonomy(
    std::span<const std::string> source_names, const Taxonomy& taxonomy,
    double sim_threshold) {
  auto has = [&](const std::string& n) {
    return taxonomy.embeddings.count(n) > 0;
  };
  const bool use_embeddings =
      !taxonomy.embeddings.empty() &&
      std::all_of(source_names.begin(), source_names.end(), has) &&
      std::all_of(taxonomy.parent_classes.begin(),
                  taxonomy.parent_classes.end(), has);

  std::vector<TaxonomyMatch> out;
  out.reserve(source_names.size());
  for (const std::string& name : source_names) {
    TaxonomyMatch match;
    match.used_embeddings = use_embeddings;
    if (use_embeddings) {
      const auto& v = taxonomy.embeddings.at(name);
      int best = -1;
      double best_sim = -2.0;
      for (int p = 0; p < taxonomy.size(); ++p) {
        const double sim =
            Dot(v, taxonomy.embeddings.at(taxonomy.parent_classes[p]));
        if (sim > best_sim) {
          best_sim = sim;
          best = p;
        }
      }
      match.score = best_sim;
      if (best >= 0 && best_sim >= sim_threshold) match.parent = best;
    } else {
      const std::string lower = Lower(name);
      for (int p = 0; p < taxonomy.size() && !match.parent; ++p) {
        if (Lower(taxonomy.parent_classes[p]) == lower) {
          match.parent = p;
          match.score = 1.0;
        }
      }
      if (!match.parent) {
        const auto tokens = Tokens(name);
        int best = -1;
        double best_j = -1.0;
        for (int p = 0; p < taxonomy.size(); ++p) {
          const double j = Jaccard(tokens, Tokens(taxonomy.parent_classes[p]));
          if (j > best_j) {
            best_j = j;
            best = p;
          }
        }
        match.score = std::max(0.0, best_j);
        if (best >= 0 && best_j >= kJaccardThreshold) match.parent = best;
      }
    }
    out.push_back(match);
  }
  return out;
}

}  // namespace sketchforge
