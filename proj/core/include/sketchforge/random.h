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

#ifndef SKETCHFORGE_RANDOM_H_
#define SKETCHFORGE_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace sketchforge {

using Rng = std::mt19937_64;

// Mixes a base seed with record-level keys so that every record, class or
// sample gets its own stream. Results do not depend on evaluation order.
std::uint64_t DeriveSeed(std::uint64_t seed,
                         std::initializer_list<std::uint64_t> keys);

// Uniform index in [0, n). n must be positive.
std::size_t UniformIndex(Rng& rng, std::size_t n);

// k distinct indices from [0, n), in draw order (partial Fisher-Yates).
std::vector<std::size_t> SampleWithoutReplacement(Rng& rng, std::size_t n,
                                                  std::size_t k);

}  // namespace sketchforge

#endif  // SKETCHFORGE_RANDOM_H_
