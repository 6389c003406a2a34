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

#include "chaoscomp/security.hpp"

#include <algorithm>
#include <random>

#include "chaoscomp/errors.hpp"
#include "chaoscomp/permute.hpp"
#include "chaoscomp/stats.hpp"

namespace chaoscomp::analysis {
namespace {

std::vector<std::uint8_t> ciphertext(std::span<const std::uint8_t> p, const keys::ChaosKey& k,
                                     const pipeline::EncryptOptions& options) {
    return pipeline::encrypt(p, k, options).body;
}

std::vector<std::uint8_t> permute_only(std::span<const std::uint8_t> p, const keys::ChaosKey& k) {
    std::vector<std::uint8_t> out(p.begin(), p.end());
    auto logistic = keys::make_logistic(k);
    permute::shuffle_buffer(out, logistic, k.kp.threshold);
    return out;
}

}  // namespace

Similarity compare_ciphertexts(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    const std::size_t n = std::min(a.size(), b.size());
    Similarity s;
    s.length_a = a.size();
    s.length_b = b.size();
    const auto pa = a.first(n);
    const auto pb = b.first(n);
    s.cc = pearson_cc(pa, pb);
    s.csi = cosine_similarity(pa, pb);
    s.csi_baseline = independent_cosine_baseline(pa, pb);
    return s;
}

SensitivityResult key_sensitivity(std::span<const std::uint8_t> p, const keys::ChaosKey& k,
                                  std::optional<std::size_t> bit, const pipeline::EncryptOptions& options) {
    const auto c1 = ciphertext(p, k, options);
    if (!bit) return {compare_ciphertexts(c1, c1), std::nullopt};
    if (*bit >= keys::key_bits) throw Error(Errc::contract_violation, "key bit index out of range");

    // bit, bit+1, bit-1, bit+2, bit-2, ... within the key
    std::vector<std::size_t> candidates{*bit};
    for (std::size_t d = 1; candidates.size() < sensitivity_retries && d < keys::key_bits; ++d) {
        if (*bit + d < keys::key_bits) candidates.push_back(*bit + d);
        if (candidates.size() < sensitivity_retries && d <= *bit) candidates.push_back(*bit - d);
    }
    for (std::size_t b : candidates) {
        const keys::ChaosKey flipped = keys::flip_key_bit(k, b);
        if (!keys::validate_key(flipped).ok()) continue;
        const auto c2 = ciphertext(p, flipped, options);
        return {compare_ciphertexts(c1, c2), b};
    }
    throw Error(Errc::sensitivity_unavailable,
                "no valid key within 32 bits of bit " + std::to_string(*bit));
}

SensitivityResult plaintext_sensitivity(std::span<const std::uint8_t> p, const keys::ChaosKey& k,
                                        std::optional<std::size_t> bit,
                                        const pipeline::EncryptOptions& options) {
    const auto c1 = ciphertext(p, k, options);
    if (!bit) return {compare_ciphertexts(c1, c1), std::nullopt};
    if (*bit >= p.size() * 8) throw Error(Errc::contract_violation, "plaintext bit index out of range");
    std::vector<std::uint8_t> q(p.begin(), p.end());
    q[*bit / 8] ^= static_cast<std::uint8_t>(1u << (*bit % 8));
    const auto c2 = ciphertext(q, k, options);
    return {compare_ciphertexts(c1, c2), *bit};
}

double plain_cipher_correlation(std::span<const std::uint8_t> p, const keys::ChaosKey& k,
                                const pipeline::EncryptOptions& options) {
    const auto c = ciphertext(p, k, options);
    const std::size_t n = std::min(p.size(), c.size());
    return pearson_cc(p.first(n), std::span(c).first(n));
}

double plain_cipher_correlation(std::span<const std::uint8_t> p, const Cipher& cipher) {
    const auto c = cipher(p);
    const std::size_t n = std::min(p.size(), c.size());
    return pearson_cc(p.first(n), std::span(c).first(n));
}

std::vector<std::uint8_t> weak_control_encrypt(std::span<const std::uint8_t> p, const keys::ChaosKey& k) {
    auto out = permute_only(p, k);
    auto henon = keys::make_henon(k);
    for (auto& b : out) b ^= henon.next();
    return out;
}

std::size_t chen_property_check(const keys::ChaosKey& k, std::size_t trials, ChenTarget target,
                                std::uint64_t seed, std::size_t sample_length) {
    if (trials == 0) throw Error(Errc::contract_violation, "chen check needs at least one trial");
    if (sample_length == 0) throw Error(Errc::contract_violation, "chen check needs non-empty samples");

    const pipeline::EncryptOptions store{codec::CodecId::store, pipeline::Mode::sce,
                                         pipeline::default_chunk_size};
    const auto encrypt = [&](std::span<const std::uint8_t> p) {
        return target == ChenTarget::pipeline ? ciphertext(p, k, store) : weak_control_encrypt(p, k);
    };

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> byte(0, 255);
    std::vector<std::uint8_t> p1(sample_length);
    std::vector<std::uint8_t> p2(sample_length);
    std::size_t equalities = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        do {
            for (auto& b : p1) b = static_cast<std::uint8_t>(byte(rng));
            for (auto& b : p2) b = static_cast<std::uint8_t>(byte(rng));
        } while (p1 == p2);

        auto c1 = encrypt(p1);
        const auto c2 = encrypt(p2);
        if (c1.size() != c2.size()) continue;
        for (std::size_t i = 0; i < c1.size(); ++i) c1[i] ^= c2[i];

        std::vector<std::uint8_t> dp(sample_length);
        for (std::size_t i = 0; i < sample_length; ++i) dp[i] = p1[i] ^ p2[i];
        if (c1 == permute_only(dp, k)) ++equalities;
    }
    return equalities;
}

}  // namespace chaoscomp::analysis
