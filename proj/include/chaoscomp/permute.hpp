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
 * @file permute.hpp
 * @brief Keyed in-block permutation: a merge phase that swaps across the two
 *        halves of a block whenever a keystream byte exceeds the threshold,
 *        followed by a Fisher-Yates pass over the undepleted upper range.
 *
 * Full blocks are 64 bytes; the final block of a buffer may be shorter. The
 * number of keystream bytes drawn depends on the keystream, n and T only,
 * never on the block contents, which keeps encryption and decryption in step.
 */

#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "chaoscomp/chaos.hpp"

namespace chaoscomp::permute {

inline constexpr std::size_t block_size = 64;

/// pi[i] is the source index of output position i, for i < n.
struct PermTrace {
    std::array<std::uint8_t, block_size> pi{};
    std::size_t n = 0;
    /// Keystream bytes consumed while building this trace.
    std::size_t draws = 0;
};

/// Draws the swap sequence for an n-byte block (1 <= n <= 64).
PermTrace make_trace(std::size_t n, chaos::ByteSource& keystream, std::uint8_t threshold);

/// Shuffles `block` in place and returns the permutation that was applied.
/// An empty block is left alone and draws nothing.
PermTrace shuffle_block(std::span<std::uint8_t> block, chaos::ByteSource& keystream,
                        std::uint8_t threshold);

/// Inverse of shuffle_block for a keystream at the same position.
void deshuffle_block(std::span<std::uint8_t> block, chaos::ByteSource& keystream,
                     std::uint8_t threshold);

/// Applies shuffle_block to consecutive 64-byte blocks; the last may be short.
void shuffle_buffer(std::span<std::uint8_t> data, chaos::ByteSource& keystream,
                    std::uint8_t threshold);
void deshuffle_buffer(std::span<std::uint8_t> data, chaos::ByteSource& keystream,
                      std::uint8_t threshold);

}  // namespace chaoscomp::permute
