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

#include "sketchforge/error.h"

namespace sketchforge {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kDegenerateGeometry: return "degenerate_geometry";
    case ErrorCode::kGeometryMismatch: return "geometry_mismatch";
    case ErrorCode::kEmptyAnswer: return "empty_answer";
    case ErrorCode::kEmptyMask: return "empty_mask";
    case ErrorCode::kEmptySketch: return "empty_sketch";
    case ErrorCode::kEmptyPool: return "empty_pool";
    case ErrorCode::kInsufficientSupply: return "insufficient_supply";
    case ErrorCode::kMissingEntries: return "missing_entries";
    case ErrorCode::kMixedTasks: return "mixed_tasks";
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kIo: return "io_error";
  }
  return "unknown";
}

}  // namespace sketchforge
