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
#include <array>
#include <numeric>
#include <random>

#include "chaoscomp/corpus.hpp"
#include "chaoscomp/errors.hpp"
#include "chaoscomp/keys.hpp"
#include "chaoscomp/permute.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace chaoscomp;
using namespace chaoscomp::permute;

namespace {

// Direct transcription of the two-phase shuffle on an index array.
std::vector<std::size_t> replay(std::size_t n, const std::vector<std::uint8_t>& ks, std::uint8_t t,
                                std::size_t& used) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    used = 0;
    std::size_t srt = 0;
    std::size_t mid = n / 2;
    while (srt != n / 2 && mid != n) {
        if (ks[used++] > t) {
            std::swap(idx[srt], idx[mid]);
            ++mid;
        }
        ++srt;
    }
    while (mid != n) {
        const std::size_t pos = mid + ks[used++] % (n - mid);
        std::swap(idx[mid], idx[pos]);
        ++mid;
    }
    return idx;
}

std::vector<std::uint8_t> random_block(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::uint8_t> b(n);
    for (auto& x : b) x = static_cast<std::uint8_t>(rng());
    return b;
}

}  // namespace

TEST_CASE("block of identical bytes is unchanged") {
    auto g = keys::make_logistic(testing::fixture_key("a"));
    std::vector<std::uint8_t> block(64, 0x5A);
    shuffle_block(block, g, 100);
    CHECK(std::all_of(block.begin(), block.end(), [](auto b) { return b == 0x5A; }));
}

TEST_CASE("all-0xFF stub with T = 0xFF: no merge swaps, Fisher-Yates over the upper half") {
    testing::ListSource src({0xFF});
    const PermTrace t = make_trace(64, src, 0xFF);
    CHECK(t.draws == 64);  // 32 merge draws, 32 Fisher-Yates draws
    std::size_t used = 0;
    const auto want = replay(64, std::vector<std::uint8_t>(128, 0xFF), 0xFF, used);
    CHECK(used == 64);
    for (std::size_t i = 0; i < 64; ++i) CHECK(t.pi[i] == want[i]);
    // The lower half never moves.
    for (std::size_t i = 0; i < 32; ++i) CHECK(t.pi[i] == i);
    // First Fisher-Yates step: pos = 32 + 255 % 32 = 63.
    CHECK(t.pi[32] == 63);
}

TEST_CASE("trace matches an independent replay for random streams, thresholds and sizes") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 1 + rng() % 64;
        const auto t = static_cast<std::uint8_t>(rng());
        const auto ks = random_block(rng, 128);
        testing::ListSource src(ks);
        const PermTrace tr = make_trace(n, src, t);
        std::size_t used = 0;
        const auto want = replay(n, ks, t, used);
        REQUIRE(tr.n == n);
        REQUIRE(tr.draws == used);
        REQUIRE(src.drawn() == used);
        for (std::size_t i = 0; i < n; ++i) REQUIRE(tr.pi[i] == want[i]);
    }
}

TEST_CASE("shuffle applies out[i] = in[pi[i]]") {
    std::mt19937_64 rng(3);
    const auto in = random_block(rng, 64);
    auto out = in;
    auto g1 = keys::make_logistic(testing::fixture_key("b"));
    auto g2 = g1;
    const PermTrace tr = shuffle_block(out, g1, 77);
    const PermTrace again = make_trace(64, g2, 77);
    CHECK(std::equal(tr.pi.begin(), tr.pi.end(), again.pi.begin()));
    for (std::size_t i = 0; i < 64; ++i) CHECK(out[i] == in[tr.pi[i]]);
}

TEST_CASE("deshuffle inverts shuffle over 10^4 fuzzed blocks and keys") {
    std::mt19937_64 rng(23);
    for (int key = 0; key < 100; ++key) {
        const auto k = keys::keygen(rng);
        auto enc = keys::make_logistic(k);
        auto dec = keys::make_logistic(k);
        const auto t = static_cast<std::uint8_t>(rng());
        for (int i = 0; i < 100; ++i) {
            const std::size_t n = 1 + rng() % 64;
            const auto plain = random_block(rng, n);
            auto block = plain;
            shuffle_block(block, enc, t);
            auto sorted_a = block;
            auto sorted_b = plain;
            std::sort(sorted_a.begin(), sorted_a.end());
            std::sort(sorted_b.begin(), sorted_b.end());
            REQUIRE(sorted_a == sorted_b);  // multiset preserved
            deshuffle_block(block, dec, t);
            REQUIRE(block == plain);
        }
        CHECK(enc.steps() == dec.steps());
    }
}

TEST_CASE("single-byte and n = 17 tail blocks") {
    auto g = keys::make_logistic(testing::fixture_key("a"));
    auto h = g;
    std::vector<std::uint8_t> one{0x42};
    const PermTrace tr = shuffle_block(one, g, 9);
    CHECK(tr.draws == 1);  // one self-swap
    CHECK(one[0] == 0x42);
    deshuffle_block(one, h, 9);
    CHECK(one[0] == 0x42);

    std::mt19937_64 rng(8);
    const auto plain = random_block(rng, 17);
    auto block = plain;
    auto e = keys::make_logistic(testing::fixture_key("c"));
    auto d = e;
    shuffle_block(block, e, 200);
    deshuffle_block(block, d, 200);
    CHECK(block == plain);
    CHECK(e.steps() == d.steps());
}

TEST_CASE("empty block is a no-op that draws nothing") {
    auto g = keys::make_logistic(testing::fixture_key("a"));
    std::vector<std::uint8_t> empty;
    shuffle_block(empty, g, 1);
    deshuffle_block(empty, g, 1);
    CHECK(g.steps() == 0);
    CHECK_THROWS_AS(make_trace(0, g, 1), Error);
    CHECK_THROWS_AS(make_trace(65, g, 1), Error);
}

TEST_CASE("keystream consumption does not depend on block contents") {
    std::mt19937_64 rng(31);
    for (std::size_t n = 1; n <= 64; ++n) {
        auto g1 = keys::make_logistic(testing::fixture_key("b"));
        auto g2 = g1;
        auto a = random_block(rng, n);
        auto b = random_block(rng, n);
        shuffle_block(a, g1, 128);
        shuffle_block(b, g2, 128);
        REQUIRE(g1.steps() == g2.steps());
    }
}

TEST_CASE("buffer shuffle keeps the global histogram and inverts") {
    const auto plain = corpus::zipf_bytes(100000 + 37, 4);
    auto data = plain;
    auto e = keys::make_logistic(testing::fixture_key("a"));
    auto d = e;
    shuffle_buffer(data, e, 128);
    CHECK(data != plain);
    std::array<std::size_t, 256> h1{}, h2{};
    for (auto b : plain) ++h1[b];
    for (auto b : data) ++h2[b];
    CHECK(h1 == h2);
    deshuffle_buffer(data, d, 128);
    CHECK(data == plain);
    CHECK(e.steps() == d.steps());
}
