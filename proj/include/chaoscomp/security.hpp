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
 * @file security.hpp
 * @brief Ciphertext similarity, key and plaintext sensitivity, plain-cipher
 * correlation and the XOR-linearity check against permute-then-XOR ciphers.
 *
 * Ciphertext means the container body; the header is excluded. When two
 * ciphertexts differ in length (compression reacts to the input) they are
 * compared over their common prefix and both lengths are reported.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "chaoscomp/keys.hpp"
#include "chaoscomp/pipeline.hpp"

namespace chaoscomp::analysis {

/// Any byte-to-byte encryption, e.g. a disabled or weakened cipher.
using Cipher = std::function<std::vector<std::uint8_t>(std::span<const std::uint8_t>)>;

struct Similarity {
    double cc = 0.0;
    double csi = 0.0;
    /// Cosine similarity expected for independent inputs with the same
    /// marginals; csi - csi_baseline is near zero for unrelated ciphertexts.
    double csi_baseline = 0.0;
    std::size_t length_a = 0;
    std::size_t length_b = 0;

    double csi_deviation() const noexcept { return csi - csi_baseline; }
};

/// Pearson CC and cosine similarity over the common prefix of a and b.
Similarity compare_ciphertexts(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

struct SensitivityResult {
    Similarity similarity;
    /// Key or plaintext bit actually flipped; empty when nothing was flipped.
    std::optional<std::size_t> flipped_bit;
};

inline constexpr std::size_t sensitivity_retries = 32;

/// Encrypts p under k and under k with one bit flipped. If the flipped key
/// fails validation the neighbours bit+1, bit-1, bit+2, ... are tried, up to
/// 32 candidates in total, before sensitivity_unavailable is thrown.
/// An empty `bit` flips nothing.
SensitivityResult key_sensitivity(std::span<const std::uint8_t> p, const keys::ChaosKey& k,
                                  std::optional<std::size_t> bit,
                                  const pipeline::EncryptOptions& options = {});

/// Bit b is bit (b % 8) of byte b / 8, counted from the LSB.
SensitivityResult plaintext_sensitivity(std::span<const std::uint8_t> p, const keys::ChaosKey& k,
                                        std::optional<std::size_t> bit,
                                        const pipeline::EncryptOptions& options = {});

/// Pearson CC between p and its ciphertext over their common prefix.
double plain_cipher_correlation(std::span<const std::uint8_t> p, const keys::ChaosKey& k,
                                const pipeline::EncryptOptions& options = {});
double plain_cipher_correlation(std::span<const std::uint8_t> p, const Cipher& cipher);

enum class ChenTarget {
    pipeline,      ///< the real cipher with the store codec
    weak_control,  ///< permute, then XOR a keystream that restarts per message
};

/// Perm_K(p) xor K1 with both streams restarted for every message and no
/// chaining. Satisfies C1 ^ C2 = Perm_K(P1 ^ P2).
std::vector<std::uint8_t> weak_control_encrypt(std::span<const std::uint8_t> p, const keys::ChaosKey& k);

/// Draws `trials` pairs of distinct random plaintexts of `sample_length`
/// bytes and counts the pairs where C1 ^ C2 equals Perm_K(P1 ^ P2), with the
/// permutation taken at the same stream position as the encryptions.
std::size_t chen_property_check(const keys::ChaosKey& k, std::size_t trials,
                                ChenTarget target = ChenTarget::pipeline, std::uint64_t seed = 1,
                                std::size_t sample_length = 256);

}  // namespace chaoscomp::analysis
