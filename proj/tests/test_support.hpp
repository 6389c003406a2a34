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

// Shared helpers for the test binaries.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "chaoscomp/chaos.hpp"
#include "chaoscomp/keys.hpp"

namespace testing {

inline std::filesystem::path data_dir() { return CHAOSCOMP_TEST_DATA; }

inline chaoscomp::keys::ChaosKey fixture_key(const std::string& name) {
    return chaoscomp::keys::load_key_file((data_dir() / "keys" / (name + ".key")).string());
}

/// Replays a fixed byte list, cycling when exhausted.
class ListSource final : public chaoscomp::chaos::ByteSource {
public:
    explicit ListSource(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}
    std::uint8_t next() override {
        const auto b = bytes_[pos_ % bytes_.size()];
        ++pos_;
        return b;
    }
    std::size_t drawn() const noexcept { return pos_; }

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

inline std::size_t hamming(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        d += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(a[i] ^ b[i])));
    }
    return d;
}

}  // namespace testing
