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

#include "chaoscomp/stats.hpp"

#include <cmath>
#include <string>

#include "chaoscomp/errors.hpp"

namespace chaoscomp::analysis {

namespace {

void require_equal_lengths(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                           std::size_t min_len) {
    if (x.size() != y.size()) {
        throw Error(Errc::contract_violation, "sequence lengths differ: " +
                                                  std::to_string(x.size()) + " vs " +
                                                  std::to_string(y.size()));
    }
    if (x.size() < min_len) {
        throw Error(Errc::contract_violation,
                    "need at least " + std::to_string(min_len) + " elements");
    }
}

struct Moments {
    double sum_x = 0, sum_y = 0, sum_xx = 0, sum_yy = 0, sum_xy = 0;
};

Moments moments(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y) {
    // Exact integer accumulation; a 64-bit sum of byte products cannot
    // overflow below 2^47 elements.
    std::uint64_t sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const std::uint64_t a = x[i], b = y[i];
        sx += a;
        sy += b;
        sxx += a * a;
        syy += b * b;
        sxy += a * b;
    }
    return {static_cast<double>(sx), static_cast<double>(sy), static_cast<double>(sxx),
            static_cast<double>(syy), static_cast<double>(sxy)};
}

}  // namespace

double pearson_cc(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y) {
    require_equal_lengths(x, y, 2);
    const Moments m = moments(x, y);
    const double n = static_cast<double>(x.size());
    const double cov = m.sum_xy - m.sum_x * m.sum_y / n;
    const double vx = m.sum_xx - m.sum_x * m.sum_x / n;
    const double vy = m.sum_yy - m.sum_y * m.sum_y / n;
    if (vx <= 0.0 || vy <= 0.0) {
        throw Error(Errc::undefined_correlation, "correlation undefined for a constant sequence");
    }
    const double r = cov / std::sqrt(vx * vy);
    return std::fmax(-1.0, std::fmin(1.0, r));
}

double cosine_similarity(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y) {
    require_equal_lengths(x, y, 1);
    const Moments m = moments(x, y);
    if (m.sum_xx == 0.0 || m.sum_yy == 0.0) {
        throw Error(Errc::undefined_similarity, "cosine similarity undefined for a zero vector");
    }
    const double c = m.sum_xy / std::sqrt(m.sum_xx * m.sum_yy);
    return std::fmax(-1.0, std::fmin(1.0, c));
}

double independent_cosine_baseline(std::span<const std::uint8_t> x,
                                   std::span<const std::uint8_t> y) {
    require_equal_lengths(x, y, 1);
    const Moments m = moments(x, y);
    if (m.sum_xx == 0.0 || m.sum_yy == 0.0) {
        throw Error(Errc::undefined_similarity, "cosine similarity undefined for a zero vector");
    }
    const double n = static_cast<double>(x.size());
    return (m.sum_x / n) * (m.sum_y / n) / std::sqrt((m.sum_xx / n) * (m.sum_yy / n));
}

}  // namespace chaoscomp::analysis
