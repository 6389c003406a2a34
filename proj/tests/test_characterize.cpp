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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "chaoscomp/characterize.hpp"
#include "chaoscomp/corpus.hpp"
#include "chaoscomp/errors.hpp"
#include "chaoscomp/stats.hpp"
#include "doctest.h"

using namespace chaoscomp;
using namespace chaoscomp::chaos;

TEST_CASE("lyapunov: logistic mu = 4 is ln 2") {
    CHECK(std::fabs(lyapunov_exponent(CharacterizationMap::logistic(4.0), 1000000) - std::numbers::ln2) < 0.01);
}

TEST_CASE("lyapunov: reference parameter sets") {
    CHECK(std::fabs(lyapunov_exponent(CharacterizationMap::logistic(3.98), 1000000) - 0.63) < 0.05);
    CHECK(std::fabs(lyapunov_exponent(CharacterizationMap::tent(1.98), 1000000) - std::log(1.98)) < 0.02);
    CHECK(std::fabs(lyapunov_exponent(CharacterizationMap::defaults(MapId::lorenz), 1000000) - 0.92) < 0.15);
    // Henon is only required to be chaotic; the literature value is about 0.42.
    const double henon = lyapunov_exponent(CharacterizationMap::defaults(MapId::henon), 1000000);
    MESSAGE("henon lyapunov estimate: " << henon);
    CHECK(henon > 0.3);
    CHECK(henon < 0.55);
}

TEST_CASE("lyapunov is positive for every default parameter set") {
    for (MapId id : {MapId::logistic, MapId::tent, MapId::henon, MapId::lorenz, MapId::chirikov}) {
        CAPTURE(map_name(id));
        CHECK(lyapunov_exponent(CharacterizationMap::defaults(id), 200000) > 0.0);
    }
}

TEST_CASE("lyapunov: periodic regime is negative, short runs are rejected") {
    CHECK(lyapunov_exponent(CharacterizationMap::logistic(3.2), 100000) < 0.0);
    CHECK_THROWS_AS(lyapunov_exponent(CharacterizationMap::logistic(3.9), 99999), Error);
}

TEST_CASE("bifurcation: period doubling of the logistic map") {
    const auto count_at = [](double mu) {
        const auto rows = bifurcation_scan(CharacterizationMap::logistic(mu), mu, mu + 1e-12, 2, 256);
        return count_distinct(rows.front().values);
    };
    CHECK(count_at(2.8) == 1);
    CHECK(count_at(3.2) == 2);
    CHECK(count_at(3.5) == 4);
    CHECK(count_at(3.9) > 16);
}

TEST_CASE("bifurcation scan shape and csv") {
    const auto rows = bifurcation_scan(CharacterizationMap::logistic(3.0), 2.5, 4.0, 7, 5);
    REQUIRE(rows.size() == 7);
    CHECK(rows.front().param == 2.5);
    CHECK(rows.back().param == 4.0);
    for (const auto& r : rows) CHECK(r.values.size() == 5);
    std::ostringstream os;
    write_bifurcation_csv(os, rows);
    const std::string csv = os.str();
    CHECK(csv.rfind("param,value\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 7 * 5);
    CHECK_THROWS_AS(bifurcation_scan(CharacterizationMap::logistic(3.0), 2.5, 4.0, 1, 5), Error);
}

TEST_CASE("count_distinct clusters by absolute gap") {
    const std::vector<double> v{0.1, 0.1 + 1e-8, 0.5, 0.5 - 5e-7, 0.9};
    CHECK(count_distinct(v) == 3);
    CHECK(count_distinct(v, 1e-7) == 4);
    CHECK(count_distinct(v, 1e-9) == 5);
    CHECK(count_distinct(std::vector<double>{}) == 0);
}

TEST_CASE("map benchmark: throughput ordering and correlation sanity") {
    const auto corpus = corpus::random_bytes(1 << 20, 5);
    const auto logistic = map_benchmark(CharacterizationMap::defaults(MapId::logistic), 1 << 20, corpus);
    const auto chirikov = map_benchmark(CharacterizationMap::defaults(MapId::chirikov), 1 << 20, corpus);
    CHECK(logistic.bytes_per_second > 0);
    CHECK(chirikov.bytes_per_second < logistic.bytes_per_second);
    CHECK(std::fabs(logistic.correlation) < 0.01);
    CHECK(std::fabs(chirikov.correlation) < 0.01);
}

TEST_CASE("zero keystream leaves the corpus perfectly correlated with itself") {
    const auto corpus = corpus::zipf_bytes(4096, 2);
    std::vector<std::uint8_t> xored(corpus);
    for (auto& b : xored) b ^= 0;
    CHECK(analysis::pearson_cc(corpus, xored) == 1.0);
}

TEST_CASE("characterization keystream is deterministic and byte-valued") {
    const auto m = CharacterizationMap::defaults(MapId::tent);
    CHECK(characterization_keystream(m, 1000) == characterization_keystream(m, 1000));
    CHECK(characterization_keystream(m, 0).empty());
}

TEST_CASE("map names roundtrip") {
    for (MapId id : {MapId::logistic, MapId::tent, MapId::henon, MapId::lorenz, MapId::chirikov}) {
        CHECK(map_from_name(map_name(id)) == id);
    }
    CHECK_THROWS_AS(map_from_name("baker"), Error);
}
