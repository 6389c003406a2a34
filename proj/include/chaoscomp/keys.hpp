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
 * @file keys.hpp
 * @brief The secret key: Logistic permutation subkey plus threshold, Henon
 *        and Lorenz substitution subkeys. 12 fixed-point words and the
 *        threshold byte make up the 13 key components.
 *
 * Key file layout (58 bytes, big-endian words):
 *
 *   offset  size  field
 *   0       4     magic "SOCK"
 *   4       1     version 0x01
 *   5       48    12 raw words: kp.x0 kp.mu ks1.x0 ks1.y0 ks1.a ks1.b
 *                 ks2.x0 ks2.y0 ks2.z0 ks2.sigma ks2.rho ks2.beta
 *   53      1     threshold T
 *   54      4     CRC-32 of bytes [0, 54)
 *
 * The CRC catches corruption only; key files are not authenticated.
 */

#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "chaoscomp/chaos.hpp"

namespace chaoscomp::keys {

using fxp::Fx32;

struct PermutationKey {
    Fx32 x0;
    Fx32 mu;
    std::uint8_t threshold = 0;
};

struct HenonKey {
    Fx32 x0;
    Fx32 y0;
    Fx32 a;
    Fx32 b;
};

struct LorenzKey {
    Fx32 x0;
    Fx32 y0;
    Fx32 z0;
    Fx32 sigma;
    Fx32 rho;
    Fx32 beta;
};

struct ChaosKey {
    PermutationKey kp;
    HenonKey ks1;
    LorenzKey ks2;

    friend bool operator==(const ChaosKey& a, const ChaosKey& b) noexcept;
};

/// Fixed-point words in the key; the threshold byte is the 13th component.
inline constexpr std::size_t word_count = 12;
inline constexpr std::size_t component_count = word_count + 1;
/// Flippable key bits: every word bit, then the 8 threshold bits.
inline constexpr std::size_t key_bits = word_count * 32 + 8;
inline constexpr std::size_t key_file_size = 58;

/// Raw words in file order. Word i holds key bits [32 i, 32 i + 32).
std::array<std::int32_t, word_count> words(const ChaosKey& k);
ChaosKey from_words(const std::array<std::int32_t, word_count>& words, std::uint8_t threshold);

/// Flips key bit `bit` (0 = LSB of kp.x0; 384..391 = threshold bits).
ChaosKey flip_key_bit(const ChaosKey& k, std::size_t bit);

// Seeding ranges. Closed unless noted.
struct Range {
    double lo;
    double hi;
};
inline constexpr Range logistic_x0_range{0.0, 1.0};  // open at both ends
inline constexpr Range logistic_mu_range{3.57, 4.0};  // open above
inline constexpr Range henon_x0_range{-1.5, 1.5};
inline constexpr Range henon_y0_range{-0.5, 0.5};
inline constexpr Range henon_a_range{1.35, 1.42};
inline constexpr Range henon_b_range{0.25, 0.31};
inline constexpr Range lorenz_xy0_range{-20.0, 20.0};
inline constexpr Range lorenz_z0_range{0.0, 50.0};
inline constexpr Range lorenz_sigma_range{9.5, 10.5};
inline constexpr Range lorenz_rho_range{27.0, 30.0};
inline constexpr Range lorenz_beta_range{2.5, 2.8};

struct Validation {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;

    bool ok() const noexcept { return violations.empty(); }
};

/// Keystream-phase iterations run per map during validation.
inline constexpr std::size_t probe_iterations = std::size_t{1} << 18;
/// Shortest keystream cycle a key may fall into within the probe. The 32-bit
/// maps are finite-state, so every trajectory is eventually periodic; typical
/// logistic cycles are a few thousand steps long.
inline constexpr std::size_t min_keystream_period = std::size_t{1} << 12;

/// Range checks, then each generator is warmed up and iterated for
/// `probe_iterations` steps, which must neither saturate nor close a cycle
/// shorter than `min_keystream_period`.
Validation validate_key(const ChaosKey& k);

/// Rejection-samples components until the key validates. Throws
/// keygen_failure after 1000 rejected candidates.
ChaosKey keygen(std::mt19937_64& entropy);

/// keygen seeded from std::random_device.
ChaosKey keygen();

std::vector<std::uint8_t> serialize_key(const ChaosKey& k);

/// Throws key_parse_error on bad magic, version, length or CRC, and
/// invalid_key when the decoded key fails validation.
ChaosKey parse_key(std::span<const std::uint8_t> bytes);

ChaosKey load_key_file(const std::string& path);

/// Writes the key file with owner-only permissions where supported.
void save_key_file(const std::string& path, const ChaosKey& k);

/// Base-10 exponent of the keyspace: components x precision_digits.
int keyspace_exponent(int precision_digits, int components);

// Fresh generators positioned at the start of the keystream for this key.
chaos::LogisticGenerator make_logistic(const ChaosKey& k);
chaos::HenonGenerator make_henon(const ChaosKey& k);
chaos::LorenzGenerator make_lorenz(const ChaosKey& k);

}  // namespace chaoscomp::keys
