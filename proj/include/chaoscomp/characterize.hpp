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

/**
 * @file characterize.hpp
 * @brief Double-precision map models for the characterization instruments:
 *        Lyapunov exponent, bifurcation scan and the keystream benchmark.
 *
 * None of this feeds the cipher; the cipher uses the fixed-point generators
 * in chaos.hpp.
 */

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace chaoscomp::chaos {

enum class MapId { logistic, tent, henon, lorenz, chirikov };

std::string_view map_name(MapId id) noexcept;
MapId map_from_name(std::string_view name);

struct CharacterizationMap {
    MapId id = MapId::logistic;
    // logistic/tent: {mu}; henon: {a, b}; lorenz: {sigma, rho, beta, dt};
    // chirikov: {k}. params[0] is the parameter a bifurcation scan sweeps,
    // except for Lorenz where rho (params[1]) is swept.
    std::array<double, 4> params{};

    static CharacterizationMap logistic(double mu);
    static CharacterizationMap tent(double mu);
    static CharacterizationMap henon(double a, double b);
    static CharacterizationMap lorenz(double sigma, double rho, double beta, double dt = 1.0 / 128);
    static CharacterizationMap chirikov(double k);

    /// Reference parameter set for each map (logistic 3.98, tent 1.98,
    /// henon 1.4/0.3, lorenz 10/28/2.67, chirikov 10).
    static CharacterizationMap defaults(MapId id);

    CharacterizationMap with_scan_param(double value) const;
};

inline constexpr std::size_t transient_iterations = 1000;

double tent_step(double x, double mu) noexcept;

struct ChirikovPoint {
    double x;
    double y;
};

/// Standard map: x' = x + k sin(y), y' = y + x', both reduced into [0, 2 pi).
ChirikovPoint chirikov_step(ChirikovPoint p, double k) noexcept;

/// Largest Lyapunov exponent after discarding `transient_iterations` iterates.
/// 1-D maps average ln|f'(x)|; Henon, Lorenz and Chirikov use tangent-vector
/// renormalization. The Lorenz value is divided by dt (per unit time).
/// Requires n >= 100000. Throws numerical_error on a non-finite derivative.
double lyapunov_exponent(const CharacterizationMap& map, std::size_t n);

struct BifurcationRow {
    double param = 0.0;
    std::vector<double> values;
};

/// `steps` parameter values evenly spaced over [lo, hi]; each records
/// `samples` x-iterates after the transient.
std::vector<BifurcationRow> bifurcation_scan(const CharacterizationMap& map, double lo, double hi,
                                             std::size_t steps, std::size_t samples);

/// Number of clusters when sorted values are split at gaps larger than `tol`.
std::size_t count_distinct(std::span<const double> values, double tol = 1e-6);

/// `n` keystream bytes: the low byte of the x value expressed as a 32-bit
/// fixed-point word (29 fractional bits for logistic/tent, 27 for
/// henon/chirikov, 21 for lorenz).
std::vector<std::uint8_t> characterization_keystream(const CharacterizationMap& map, std::size_t n);

struct MapBenchmark {
    MapId map = MapId::logistic;
    double bytes_per_second = 0.0;
    /// Pearson correlation between the corpus and corpus XOR keystream.
    double correlation = 0.0;
};

/// Times keystream generation for `n` bytes and correlates the first n
/// corpus bytes (cycled if shorter) with their XOR-encrypted image.
MapBenchmark map_benchmark(const CharacterizationMap& map, std::size_t n,
                           std::span<const std::uint8_t> corpus);

void write_bifurcation_csv(std::ostream& os, std::span<const BifurcationRow> rows);

}  // namespace chaoscomp::chaos
