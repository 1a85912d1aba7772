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

#ifndef SKETCHFORGE_TOOLS_APP_H_
#define SKETCHFORGE_TOOLS_APP_H_

#include <ostream>

namespace sketchforge::cli {

// Parses argv, runs one subcommand and returns the process exit code.
// Failures are reported on `err` as a single JSON object.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace sketchforge::cli

#endif  // SKETCHFORGE_TOOLS_APP_H_
