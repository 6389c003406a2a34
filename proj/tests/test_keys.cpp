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

#include <sys/stat.h>

#include <algorithm>
#include <filesystem>
#include <random>

#include "chaoscomp/errors.hpp"
#include "chaoscomp/keys.hpp"
#include "chaoscomp/nist.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace chaoscomp;
using namespace chaoscomp::keys;
using fxp::Fx32;

namespace {

bool has_message(const std::vector<std::string>& list, const std::string& needle) {
    return std::any_of(list.begin(), list.end(),
                       [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

template <class F>
Errc error_code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::contract_violation;
}

}  // namespace

TEST_CASE("keyspace exponent") {
    CHECK(keyspace_exponent(8, 13) == 104);
    CHECK(keyspace_exponent(8, 0) == 0);
    CHECK(keyspace_exponent(1, 13) == 13);
    CHECK_THROWS_AS(keyspace_exponent(0, 13), Error);
    CHECK_THROWS_AS(keyspace_exponent(8, -1), Error);
    CHECK(component_count == 13);
}

TEST_CASE("fixture key decodes to the intended components") {
    const ChaosKey k = testing::fixture_key("a");
    CHECK(k.kp.x0 == Fx32::from_double(0.3141592, chaos::logistic_format));
    CHECK(k.kp.mu == Fx32::from_double(3.99, chaos::logistic_format));
    CHECK(k.ks1.a == Fx32::from_double(1.4, chaos::henon_format));
    CHECK(k.ks2.beta == Fx32::from_double(2.67, chaos::lorenz_format));
    CHECK(k.kp.threshold == 128);
    CHECK(validate_key(k).ok());
}

TEST_CASE("validation reports each violation") {
    const ChaosKey good = testing::fixture_key("a");

    ChaosKey k = good;
    k.kp.x0 = Fx32::from_raw(0, chaos::logistic_format);
    auto v = validate_key(k);
    CHECK_FALSE(v.ok());
    CHECK(has_message(v.violations, "fixed point seed"));

    k = good;
    k.kp.x0 = Fx32::from_double(0.5, chaos::logistic_format);
    CHECK(has_message(validate_key(k).violations, "fixed point seed"));

    k = good;
    k.kp.mu = Fx32::from_double(3.2, chaos::logistic_format);
    CHECK(has_message(validate_key(k).violations, "outside chaotic range [3.57,4)"));

    k = good;
    k.ks2.x0 = k.ks2.y0 = k.ks2.z0 = Fx32::from_raw(0, chaos::lorenz_format);
    CHECK(has_message(validate_key(k).violations, "ks2: fixed point seed"));

    k = good;
    k.ks1.a = Fx32::from_double(1.2, chaos::henon_format);
    CHECK(has_message(validate_key(k).violations, "ks1.a"));

    k = good;
    k.ks1.x0 = Fx32::from_double(0.1, chaos::logistic_format);  // wrong Q format
    CHECK_FALSE(validate_key(k).ok());
}

TEST_CASE("threshold extremes are valid with a warning") {
    for (std::uint8_t t : {std::uint8_t{0}, std::uint8_t{255}}) {
        ChaosKey k = testing::fixture_key("b");
        k.kp.threshold = t;
        const auto v = validate_key(k);
        CHECK(v.ok());
        CHECK_FALSE(v.warnings.empty());
    }
    CHECK(validate_key(testing::fixture_key("b")).warnings.empty());
}

TEST_CASE("keygen returns valid, distinct keys; seeded keygen is reproducible") {
    std::mt19937_64 a(1), b(1), c(2);
    const ChaosKey ka = keygen(a);
    CHECK(validate_key(ka).ok());
    CHECK(ka == keygen(b));
    CHECK_FALSE(ka == keygen(c));
    CHECK_FALSE(keygen() == keygen());
}

TEST_CASE("1000 generated keys: every keystream passes monobit on 10^4 bytes") {
    std::mt19937_64 rng(2026);
    std::vector<std::uint8_t> buf(10000);
    std::size_t failures = 0;
    for (int i = 0; i < 1000; ++i) {
        const ChaosKey k = keygen(rng);
        REQUIRE(validate_key(k).ok());
        auto l = make_logistic(k);
        auto h = make_henon(k);
        auto z = make_lorenz(k);
        for (chaos::ByteSource* g : {static_cast<chaos::ByteSource*>(&l), static_cast<chaos::ByteSource*>(&h),
                                     static_cast<chaos::ByteSource*>(&z)}) {
            g->fill(buf);
            const double p = analysis::frequency_test(analysis::BitSample::from_bytes(buf).bits());
            if (p < 1e-6) ++failures;
        }
    }
    CHECK(failures == 0);
}

TEST_CASE("serialize/parse roundtrip on generated keys") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const ChaosKey k = keygen(rng);
        const auto bytes = serialize_key(k);
        REQUIRE(bytes.size() == key_file_size);
        CHECK(parse_key(bytes) == k);
        CHECK(serialize_key(parse_key(bytes)) == bytes);
    }
}

TEST_CASE("parse rejects malformed key files") {
    const auto good = serialize_key(testing::fixture_key("c"));

    auto truncated = good;
    truncated.pop_back();
    CHECK(error_code_of([&] { parse_key(truncated); }) == Errc::key_parse_error);
    CHECK(error_code_of([&] { parse_key({}); }) == Errc::key_parse_error);

    auto magic = good;
    magic[0] = 'X';
    CHECK(error_code_of([&] { parse_key(magic); }) == Errc::key_parse_error);

    auto version = good;
    version[4] = 2;
    CHECK(error_code_of([&] { parse_key(version); }) == Errc::key_parse_error);

    auto corrupt = good;
    corrupt[20] ^= 0x40;
    CHECK(error_code_of([&] { parse_key(corrupt); }) == Errc::key_parse_error);
}

TEST_CASE("CRC-consistent edits parse; invalid contents are rejected after parsing") {
    // Re-serializing after an edit recomputes the CRC: the format is not authenticated.
    ChaosKey k = testing::fixture_key("c");
    k.kp.threshold = static_cast<std::uint8_t>(k.kp.threshold ^ 0x11);
    const ChaosKey back = parse_key(serialize_key(k));
    CHECK(back.kp.threshold == k.kp.threshold);
    CHECK_FALSE(back == testing::fixture_key("c"));

    ChaosKey bad = testing::fixture_key("c");
    bad.kp.mu = Fx32::from_double(3.0, chaos::logistic_format);
    CHECK(error_code_of([&] { parse_key(serialize_key(bad)); }) == Errc::invalid_key);
}

TEST_CASE("key files are written owner-only and load back") {
    const auto dir = std::filesystem::temp_directory_path() / "chaoscomp_keys_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "k.key").string();
    std::filesystem::remove(path);
    const ChaosKey k = testing::fixture_key("a");
    save_key_file(path, k);
    struct stat st {};
    REQUIRE(::stat(path.c_str(), &st) == 0);
    CHECK((st.st_mode & 0777) == 0600);
    CHECK(std::filesystem::file_size(path) == key_file_size);
    CHECK(load_key_file(path) == k);
    CHECK(error_code_of([&] { load_key_file((dir / "missing.key").string()); }) == Errc::io_error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("flip_key_bit addresses words then threshold bits") {
    const ChaosKey k = testing::fixture_key("a");
    const ChaosKey f0 = flip_key_bit(k, 0);
    CHECK(f0.kp.x0.raw() == (k.kp.x0.raw() ^ 1));
    CHECK(flip_key_bit(f0, 0) == k);
    const ChaosKey f33 = flip_key_bit(k, 33);
    CHECK(f33.kp.mu.raw() == (k.kp.mu.raw() ^ 2));
    const ChaosKey ft = flip_key_bit(k, 384);
    CHECK(ft.kp.threshold == (k.kp.threshold ^ 1));
    CHECK(flip_key_bit(k, 391).kp.threshold == (k.kp.threshold ^ 0x80));
    CHECK(error_code_of([&] { flip_key_bit(k, key_bits); }) == Errc::contract_violation);
}

TEST_CASE("words and from_words are inverse") {
    const ChaosKey k = testing::fixture_key("b");
    CHECK(from_words(words(k), k.kp.threshold) == k);
}
