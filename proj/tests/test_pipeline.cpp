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

#include <cmath>
#include <random>
#include <sstream>

#include "chaoscomp/corpus.hpp"
#include "chaoscomp/errors.hpp"
#include "chaoscomp/nist.hpp"
#include "chaoscomp/pipeline.hpp"
#include "chaoscomp/stats.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace chaoscomp;
using namespace chaoscomp::pipeline;
using codec::CodecId;

namespace {

constexpr Mode all_modes[] = {Mode::sce, Mode::cte, Mode::etc};

std::vector<CodecId> available_codecs() {
    std::vector<CodecId> out;
    for (CodecId id : {CodecId::store, CodecId::baseline, CodecId::external}) {
        if (codec::codec_available(id)) out.push_back(id);
    }
    return out;
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

std::vector<std::uint8_t> as_bytes(const std::string& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("roundtrip across modes, codecs, lengths and chunk boundaries") {
    const auto k = testing::fixture_key("a");
    std::mt19937_64 rng(1);
    for (Mode m : all_modes) {
        for (CodecId c : available_codecs()) {
            for (std::uint32_t chunk : {min_chunk_size, default_chunk_size}) {
                for (std::size_t n : {1u, 63u, 64u, 65u, 4095u, 4096u, 4097u, 8193u, 100000u}) {
                    CAPTURE(mode_name(m));
                    CAPTURE(codec::codec_name(c));
                    CAPTURE(chunk);
                    CAPTURE(n);
                    const auto plain = (n % 2) ? corpus::random_bytes(n, rng()) : corpus::synthetic_text(n, rng());
                    const SceContainer ct = encrypt(plain, k, {c, m, chunk});
                    CHECK(ct.header.chunk_lengths.size() == (n + chunk - 1) / chunk);
                    CHECK(ct.header.body_length() == ct.body.size());
                    REQUIRE(decrypt(ct, k) == plain);
                    REQUIRE(decrypt(parse_container(serialize_container(ct)), k) == plain);
                }
            }
        }
    }
}

TEST_CASE("a million zeros: body is small and looks random") {
    const std::vector<std::uint8_t> zeros(1000000, 0);
    const auto ct = encrypt(zeros, testing::fixture_key("b"));
    MESSAGE("body of 10^6 zeros: " << ct.body.size() << " bytes");
    CHECK(ct.body.size() < 10000);
    const auto bits = analysis::BitSample::from_bytes(ct.body);
    CHECK(analysis::frequency_test(bits.bits()) >= 0.01);
    CHECK(decrypt(ct, testing::fixture_key("b")) == zeros);
}

TEST_CASE("keys one LSB apart give uncorrelated bodies") {
    const auto plain = corpus::random_bytes(1 << 20, 3);
    const auto k = testing::fixture_key("a");
    // Lowest key bit whose flip still gives a valid key.
    std::size_t bit = 0;
    while (bit < 32 && !keys::validate_key(keys::flip_key_bit(k, bit)).ok()) ++bit;
    REQUIRE(bit < 32);
    const auto k2 = keys::flip_key_bit(k, bit);
    const auto a = encrypt(plain, k).body;
    const auto b = encrypt(plain, k2).body;
    REQUIRE(a.size() == b.size());
    CHECK(std::fabs(analysis::pearson_cc(a, b)) < 0.05);
}

TEST_CASE("wrong key never yields the plaintext") {
    const auto plain = corpus::synthetic_text(50000, 2);
    const auto ct = encrypt(plain, testing::fixture_key("a"));
    for (const char* other : {"b", "c"}) {
        CAPTURE(other);
        std::vector<std::uint8_t> out;
        Errc code = Errc::contract_violation;
        bool threw = false;
        try {
            out = decrypt(ct, testing::fixture_key(other));
        } catch (const Error& e) {
            threw = true;
            code = e.code();
        }
        if (threw) {
            CHECK((code == Errc::decode_error || code == Errc::integrity_mismatch));
        } else {
            CHECK(out != plain);
        }
    }
}

TEST_CASE("container header layout is little-endian and exact") {
    const auto plain = corpus::random_bytes(10000, 4);
    const auto ct = encrypt(plain, testing::fixture_key("a"), {CodecId::store, Mode::cte, 4096});
    const auto bytes = serialize_container(ct);
    REQUIRE(bytes.size() == 23 + 3 * 4 + 10000);
    CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "SOC1");
    CHECK(bytes[4] == 1);
    CHECK(bytes[5] == 0);
    CHECK(bytes[6] == 1);
    CHECK(bytes[7] == 0x00);
    CHECK(bytes[8] == 0x10);  // 4096
    CHECK(bytes[9] == 0);
    CHECK(bytes[10] == 0);
    CHECK(bytes[11] == (10000 & 0xFF));
    CHECK(bytes[12] == (10000 >> 8));
    for (int i = 13; i < 19; ++i) CHECK(bytes[i] == 0);
    CHECK(bytes[19] == 3);
    CHECK(bytes[23] == 0x00);
    CHECK(bytes[24] == 0x10);
    CHECK(bytes[31] == ((10000 - 8192) & 0xFF));
    CHECK(bytes[32] == ((10000 - 8192) >> 8));
}

TEST_CASE("malformed containers are format errors") {
    const auto plain = corpus::synthetic_text(20000, 7);
    const auto good = serialize_container(encrypt(plain, testing::fixture_key("c"), {CodecId::baseline, Mode::sce, 8192}));

    auto f = [&](std::vector<std::uint8_t> b) { return error_code_of([&] { parse_container(b); }); };
    auto bad = good;
    bad[0] = 'X';
    CHECK(f(bad) == Errc::format_error);
    bad = good;
    bad[4] = 9;
    CHECK(f(bad) == Errc::format_error);
    bad = good;
    bad[5] = 7;
    CHECK(f(bad) == Errc::format_error);
    bad = good;
    bad[6] = 3;
    CHECK(f(bad) == Errc::format_error);
    bad = good;
    bad[19] += 1;  // chunk count disagrees with length and chunk size
    CHECK(f(bad) == Errc::format_error);
    bad = good;
    bad[8] = 0;  // chunk size 0 bytes..4 KiB
    bad[7] = 0;
    CHECK(f(bad) == Errc::format_error);
    CHECK(f({good.begin(), good.begin() + 10}) == Errc::format_error);
    CHECK(f({good.begin(), good.end() - 1}) == Errc::format_error);  // truncated body
    bad = good;
    bad.push_back(0);
    CHECK(f(bad) == Errc::format_error);

    // A body shorter than its table inside an already-parsed container.
    SceContainer c = parse_container(good);
    c.body.pop_back();
    CHECK(error_code_of([&] { decrypt(c, testing::fixture_key("c")); }) == Errc::format_error);
}

TEST_CASE("streaming output equals the in-memory container") {
    const auto plain = corpus::synthetic_text(300000, 11);
    const auto k = testing::fixture_key("b");
    for (Mode m : all_modes) {
        const EncryptOptions opt{CodecId::baseline, m, 65536};
        std::istringstream in(std::string(plain.begin(), plain.end()));
        std::ostringstream out;
        const ContainerHeader h = encrypt_stream(in, out, k, opt);
        const auto streamed = as_bytes(out.str());
        CHECK(streamed == serialize_container(encrypt(plain, k, opt)));
        CHECK(h.original_length == plain.size());

        std::istringstream cin(out.str());
        std::ostringstream pout;
        decrypt_stream(cin, pout, k);
        CHECK(as_bytes(pout.str()) == plain);
    }
}

TEST_CASE("stream decryption rejects truncation and trailing bytes") {
    const auto plain = corpus::synthetic_text(50000, 12);
    const auto k = testing::fixture_key("a");
    const auto bytes = serialize_container(encrypt(plain, k, {CodecId::baseline, Mode::sce, 4096}));
    std::string s(bytes.begin(), bytes.end());
    {
        std::istringstream in(s.substr(0, s.size() - 3));
        std::ostringstream out;
        CHECK(error_code_of([&] { decrypt_stream(in, out, k); }) == Errc::format_error);
    }
    {
        std::istringstream in(s + "x");
        std::ostringstream out;
        CHECK(error_code_of([&] { decrypt_stream(in, out, k); }) == Errc::format_error);
    }
    {
        std::istringstream in(std::string{});
        std::ostringstream out;
        CHECK(error_code_of([&] { encrypt_stream(in, out, k); }) == Errc::empty_input);
    }
}

TEST_CASE("decryption consumes exactly the keystream encryption consumed") {
    const auto plain = corpus::zipf_bytes(200000, 13);
    const auto k = testing::fixture_key("c");
    for (Mode m : all_modes) {
        Encryptor enc(k, {CodecId::baseline, m, 16384});
        Decryptor dec(k, CodecId::baseline, m);
        for (std::size_t off = 0; off < plain.size(); off += 16384) {
            const auto n = std::min<std::size_t>(16384, plain.size() - off);
            const auto stored = enc.encrypt_chunk(std::span(plain).subspan(off, n));
            const auto back = dec.decrypt_chunk(stored, n);
            REQUIRE(std::equal(back.begin(), back.end(), plain.begin() + static_cast<std::ptrdiff_t>(off)));
        }
        CHECK(enc.counters() == dec.counters());
        CHECK(enc.counters().logistic > 0);
        CHECK(enc.counters().henon == enc.counters().lorenz);
    }
}

TEST_CASE("input validation") {
    const auto k = testing::fixture_key("a");
    CHECK(error_code_of([&] { encrypt({}, k); }) == Errc::empty_input);
    auto bad = k;
    bad.kp.mu = fxp::Fx32::from_double(3.0, chaos::logistic_format);
    const std::vector<std::uint8_t> one{1};
    CHECK(error_code_of([&] { encrypt(one, bad); }) == Errc::invalid_key);
    CHECK(error_code_of([&] { encrypt(one, k, {CodecId::baseline, Mode::sce, 4095}); }) == Errc::contract_violation);
    CHECK(error_code_of([&] { encrypt(one, k, {CodecId::baseline, Mode::sce, max_chunk_size + 1}); }) ==
          Errc::contract_violation);
    for (Mode m : all_modes) CHECK(mode_from_name(mode_name(m)) == m);
    CHECK_THROWS_AS(mode_from_name("ecb"), Error);
}

TEST_CASE("pipeline benchmark ratios") {
    const auto zipf = corpus::zipf_bytes(1 << 20, 14);
    const auto k = testing::fixture_key("b");
    const std::vector<Mode> modes{Mode::sce, Mode::cte, Mode::etc};
    const std::vector<CodecId> codecs{CodecId::store, CodecId::baseline};
    const auto rows = pipeline_benchmark(zipf, k, modes, codecs);
    REQUIRE(rows.size() == 6);
    auto find = [&](Mode m, CodecId c) {
        for (const auto& r : rows) {
            if (r.mode == m && r.codec == c) return r;
        }
        FAIL("missing row");
        return rows.front();
    };
    CHECK(find(Mode::sce, CodecId::store).ratio == 1.0);
    const double sce = find(Mode::sce, CodecId::baseline).ratio;
    const double cte = find(Mode::cte, CodecId::baseline).ratio;
    const double etc = find(Mode::etc, CodecId::baseline).ratio;
    MESSAGE("zipf ratios: sce " << sce << ", cte " << cte << ", etc " << etc);
    CHECK(sce >= 0.85 * cte);
    CHECK(etc <= 1.05);
    CHECK(etc == doctest::Approx(1.0).epsilon(0.01));
}
