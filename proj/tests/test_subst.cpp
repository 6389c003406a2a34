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

#include <random>

#include "chaoscomp/keys.hpp"
#include "chaoscomp/subst.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace chaoscomp;
using namespace chaoscomp::subst;
using testing::ListSource;

namespace {

std::vector<std::uint8_t> run(std::vector<std::uint8_t> data, std::vector<std::uint8_t> h,
                              std::vector<std::uint8_t> l) {
    ListSource hs(std::move(h));
    ListSource ls(std::move(l));
    SubstState s{hs, ls};
    substitute(data, s);
    return data;
}

std::vector<std::uint8_t> random_bytes(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::uint8_t> b(n);
    for (auto& x : b) x = static_cast<std::uint8_t>(rng());
    return b;
}

struct Streams {
    chaos::HenonGenerator h;
    chaos::LorenzGenerator l;
    SubstState s;
    explicit Streams(const keys::ChaosKey& k) : h(keys::make_henon(k)), l(keys::make_lorenz(k)), s{h, l} {}
};

}  // namespace

TEST_CASE("hand-evaluated chains") {
    CHECK(run({0x00}, {0x00}, {0x00}) == std::vector<std::uint8_t>{0x00});
    CHECK(run({0xAB}, {0xFF}, {0x00}) == std::vector<std::uint8_t>{0x54});
    CHECK(run({0x01, 0x01}, {0x00}, {0x00}) == std::vector<std::uint8_t>{0x01, 0x02});
    // The sum wraps modulo 256.
    CHECK(run({0xF0, 0x20}, {0x00}, {0x00}) == std::vector<std::uint8_t>{0xF0, 0x10});
    // Lorenz byte applies after the addition: u = 0x01 + 0, c = 0x01 ^ 0x80.
    CHECK(run({0x01}, {0x00}, {0x80}) == std::vector<std::uint8_t>{0x81});
}

TEST_CASE("empty input is untouched and draws nothing") {
    ListSource h({1});
    ListSource l({2});
    SubstState s{h, l};
    std::vector<std::uint8_t> empty;
    substitute(empty, s);
    desubstitute(empty, s);
    CHECK(h.drawn() == 0);
    CHECK(l.drawn() == 0);
    CHECK(s.prev == 0);
}

TEST_CASE("desubstitute inverts substitute over 10^4 fuzzed buffers") {
    std::mt19937_64 rng(41);
    const keys::ChaosKey keys_list[] = {testing::fixture_key("a"), testing::fixture_key("b"),
                                        testing::fixture_key("c")};
    for (const auto& k : keys_list) {
        Streams enc(k);
        Streams dec(k);
        for (int i = 0; i < 3334; ++i) {
            const auto plain = random_bytes(rng, rng() % 300);
            auto data = plain;
            substitute(data, enc.s);
            desubstitute(data, dec.s);
            REQUIRE(data == plain);
        }
        CHECK(enc.h.steps() == dec.h.steps());
        CHECK(enc.l.steps() == dec.l.steps());
    }
}

TEST_CASE("split calls equal one call") {
    std::mt19937_64 rng(2);
    const auto plain = random_bytes(rng, 10000);
    Streams whole(testing::fixture_key("a"));
    auto a = plain;
    substitute(a, whole.s);
    Streams parts(testing::fixture_key("a"));
    auto b = plain;
    std::span<std::uint8_t> rest(b);
    for (std::size_t len : {1u, 4095u, 4097u, 3u}) {
        substitute(rest.first(len), parts.s);
        rest = rest.subspan(len);
    }
    substitute(rest, parts.s);
    CHECK(a == b);
}

TEST_CASE("a flipped ciphertext byte corrupts exactly two plaintext bytes") {
    std::mt19937_64 rng(5);
    const auto plain = random_bytes(rng, 1000);
    Streams enc(testing::fixture_key("b"));
    auto c = plain;
    substitute(c, enc.s);
    c[500] ^= 0x10;
    Streams dec(testing::fixture_key("b"));
    desubstitute(c, dec.s);
    for (std::size_t i = 0; i < plain.size(); ++i) {
        if (i == 500 || i == 501) {
            CHECK(c[i] != plain[i]);
        } else {
            REQUIRE(c[i] == plain[i]);
        }
    }
}

TEST_CASE("a flipped plaintext byte changes every later ciphertext byte") {
    std::mt19937_64 rng(6);
    std::size_t positions = 0;
    std::size_t changed = 0;
    std::size_t bits = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto plain = random_bytes(rng, 4096);
        const std::size_t at = rng() % 2048;
        auto flipped = plain;
        flipped[at] ^= 0x01;
        Streams e1(testing::fixture_key("c"));
        Streams e2(testing::fixture_key("c"));
        auto c1 = plain;
        auto c2 = flipped;
        substitute(c1, e1.s);
        substitute(c2, e2.s);
        for (std::size_t i = 0; i < at; ++i) REQUIRE(c1[i] == c2[i]);
        for (std::size_t i = at; i < c1.size(); ++i) {
            ++positions;
            changed += c1[i] != c2[i];
        }
        bits += testing::hamming(std::span(c1).subspan(at + 1), std::span(c2).subspan(at + 1));
    }
    const double rate = static_cast<double>(changed) / static_cast<double>(positions);
    CHECK(rate >= 0.95);
    CHECK(rate <= 1.0);
    // Bits after the flipped position, over all trials.
    const double trailing_bits = static_cast<double>(8 * (positions - 50));
    CHECK(static_cast<double>(bits) / trailing_bits >= 0.49);
}

TEST_CASE("the lowest differing bit survives the chain unchanged") {
    // Addition never changes bits below the lowest bit in which two addends
    // differ, and the XOR layers act on both chains alike, so a difference
    // confined to bit j stays out of bits 0..j-1 and keeps bit j set.
    std::mt19937_64 rng(8);
    for (unsigned j = 0; j < 8; ++j) {
        const auto plain = random_bytes(rng, 2048);
        auto flipped = plain;
        flipped[100] ^= static_cast<std::uint8_t>(1u << j);
        Streams e1(testing::fixture_key("a"));
        Streams e2(testing::fixture_key("a"));
        auto c1 = plain;
        auto c2 = flipped;
        substitute(c1, e1.s);
        substitute(c2, e2.s);
        const unsigned low_mask = (1u << j) - 1;
        for (std::size_t i = 100; i < c1.size(); ++i) {
            const unsigned d = static_cast<unsigned>(c1[i] ^ c2[i]);
            REQUIRE((d & low_mask) == 0);
            REQUIRE((d >> j & 1u) == 1);
        }
    }
}
