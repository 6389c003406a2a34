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

#include <cstdint>
#include <span>

namespace chaoscomp::analysis {

/// cov(X,Y) / (sigma_X sigma_Y) over byte values. Equal lengths >= 2 required;
/// a constant input throws undefined_correlation.
double pearson_cc(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y);

/// X.Y / (|X| |Y|) on raw byte values (no mean-centering). An all-zero input
/// throws undefined_similarity.
double cosine_similarity(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y);

/// Cosine similarity expected if x and y were independent with their observed
/// marginals: mean(x) mean(y) / sqrt(E[x^2] E[y^2]). For two uniform byte
/// streams this is about 0.7485.
double independent_cosine_baseline(std::span<const std::uint8_t> x,
                                   std::span<const std::uint8_t> y);

}  // namespace chaoscomp::analysis
