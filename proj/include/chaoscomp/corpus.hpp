/**
 * Copyright 2026 The chaoscomp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

// Synthetic inputs for benchmarks and analysis runs. Deterministic per seed.
namespace chaoscomp::corpus {

std::vector<std::uint8_t> random_bytes(std::size_t n, std::uint64_t seed);

/// i.i.d. bytes where value r has probability proportional to 1 / (r + 1)^s.
std::vector<std::uint8_t> zipf_bytes(std::size_t n, std::uint64_t seed, double s = 1.0);

/// English-like text: words from a fixed vocabulary drawn with Zipf
/// frequencies, grouped into capitalized sentences and paragraphs.
std::vector<std::uint8_t> synthetic_text(std::size_t n, std::uint64_t seed);

}  // namespace chaoscomp::corpus
