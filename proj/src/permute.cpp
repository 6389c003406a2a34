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

#include "chaoscomp/permute.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace chaoscomp::permute {

PermTrace make_trace(std::size_t n, chaos::ByteSource& keystream, std::uint8_t threshold) {
    if (n == 0 || n > block_size) {
        throw Error(Errc::contract_violation, "permutation block length must be in [1, 64]");
    }
    PermTrace t;
    t.n = n;
    std::iota(t.pi.begin(), t.pi.begin() + static_cast<std::ptrdiff_t>(n), std::uint8_t{0});

    const std::size_t half = n / 2;
    std::size_t srt = 0;
    std::size_t mid = half;
    while (srt != half && mid != n) {
        const std::uint8_t l1 = keystream.next();
        ++t.draws;
        if (l1 > threshold) {
            std::swap(t.pi[srt], t.pi[mid]);
            ++mid;
        }
        ++srt;
    }
    // Fisher-Yates over whatever is left of the upper range. Self-swaps allowed.
    while (mid != n) {
        const std::uint8_t r = keystream.next();
        ++t.draws;
        const std::size_t pos = mid + r % (n - mid);
        std::swap(t.pi[mid], t.pi[pos]);
        ++mid;
    }
    return t;
}

PermTrace shuffle_block(std::span<std::uint8_t> block, chaos::ByteSource& keystream,
                        std::uint8_t threshold) {
    if (block.empty()) return {};
    const PermTrace t = make_trace(block.size(), keystream, threshold);
    std::array<std::uint8_t, block_size> tmp{};
    for (std::size_t i = 0; i < t.n; ++i) tmp[i] = block[t.pi[i]];
    std::copy_n(tmp.begin(), t.n, block.begin());
    return t;
}

void deshuffle_block(std::span<std::uint8_t> block, chaos::ByteSource& keystream,
                     std::uint8_t threshold) {
    if (block.empty()) return;
    const PermTrace t = make_trace(block.size(), keystream, threshold);
    std::array<std::uint8_t, block_size> tmp{};
    for (std::size_t i = 0; i < t.n; ++i) tmp[t.pi[i]] = block[i];
    std::copy_n(tmp.begin(), t.n, block.begin());
}

void shuffle_buffer(std::span<std::uint8_t> data, chaos::ByteSource& keystream,
                    std::uint8_t threshold) {
    for (std::size_t off = 0; off < data.size(); off += block_size) {
        shuffle_block(data.subspan(off, std::min(block_size, data.size() - off)), keystream,
                      threshold);
    }
}

void deshuffle_buffer(std::span<std::uint8_t> data, chaos::ByteSource& keystream,
                      std::uint8_t threshold) {
    for (std::size_t off = 0; off < data.size(); off += block_size) {
        deshuffle_block(data.subspan(off, std::min(block_size, data.size() - off)), keystream,
                        threshold);
    }
}

}  // namespace chaoscomp::permute
