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

#include "run_manifest.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <vector>

#include <openssl/evp.h>

#include "sketchforge/error.h"
#include "sketchforge/jsonl.h"
#include "version.h"

namespace sketchforge::cli {
namespace fs = std::filesystem;
namespace {

using DigestCtx = std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)>;

DigestCtx NewDigest() {
  DigestCtx ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 initialisation failed");
  }
  return ctx;
}

std::string Finish(EVP_MD_CTX* ctx) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_DigestFinal_ex(ctx, md.data(), &len) != 1) {
    throw std::runtime_error("SHA-256 finalisation failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace

std::string Sha256Hex(std::string_view bytes) {
  DigestCtx ctx = NewDigest();
  EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size());
  return Finish(ctx.get());
}

std::string Sha256File(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  DigestCtx ctx = NewDigest();
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    EVP_DigestUpdate(ctx.get(), buf.data(),
                     static_cast<std::size_t>(in.gcount()));
  }
  return Finish(ctx.get());
}

nlohmann::json OutputHeader(const RunConfig& config) {
  return {{"tool", kToolName},
          {"version", kVersion},
          {"subcommand", config.subcommand()},
          {"seed", config.seed()},
          {"config", config.Snapshot()}};
}

RunManifest::RunManifest(const RunConfig& config, fs::path output_dir)
    : config_(config), output_dir_(std::move(output_dir)) {
  fs::create_directories(output_dir_);
}

void RunManifest::AddInput(const std::string& key, const fs::path& path) {
  inputs_.push_back({{"key", key}, {"sha256", Sha256File(path)}});
}

fs::path RunManifest::WriteOutput(const std::string& name,
                                  std::string_view contents, bool partial) {
  const std::string file = partial ? name + kPartialSuffix : name;
  const fs::path path = output_dir_ / file;
  WriteFileAtomic(path, contents);
  // A stale file from an earlier run under the other name would be ambiguous.
  std::error_code ec;
  fs::remove(output_dir_ / (partial ? name : name + kPartialSuffix), ec);
  outputs_.push_back({{"path", file},
                      {"bytes", contents.size()},
                      {"sha256", Sha256Hex(contents)}});
  return path;
}

void RunManifest::AddOutputTree(const std::string& name, const fs::path& dir) {
  std::vector<std::pair<std::string, std::string>> entries;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    entries.emplace_back(fs::relative(e.path(), dir).generic_string(),
                         Sha256File(e.path()));
  }
  std::sort(entries.begin(), entries.end());
  std::string listing;
  for (const auto& [rel, digest] : entries) {
    listing += rel + "  " + digest + "\n";
  }
  outputs_.push_back({{"path", name + "/"},
                      {"files", entries.size()},
                      {"sha256", Sha256Hex(listing)}});
}

fs::path RunManifest::Write() const {
  nlohmann::json j = {{"tool", kToolName},
                      {"version", kVersion},
                      {"subcommand", config_.subcommand()},
                      {"seed", config_.seed()},
                      {"config", config_.Snapshot()},
                      {"inputs", inputs_},
                      {"outputs", outputs_},
                      {"status", partial_ ? "partial" : "ok"},
                      {"summary", summary_}};
  const fs::path path = output_dir_ / "run_manifest.json";
  WriteFileAtomic(path, j.dump(2) + "\n");
  return path;
}

}  // namespace sketchforge::cli
