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

#include "chaoscomp/subst.hpp"

#include <algorithm>
#include <array>

namespace chaoscomp::subst {

namespace {

constexpr std::size_t batch = 4096;

template <class Op>
void run_batched(std::span<std::uint8_t> data, SubstState& s, Op op) {
    std::array<std::uint8_t, batch> h{};
    std::array<std::uint8_t, batch> l{};
    for (std::size_t off = 0; off < data.size(); off += batch) {
        const std::size_t n = std::min(batch, data.size() - off);
        s.henon.fill(std::span(h).first(n));
        s.lorenz.fill(std::span(l).first(n));
        for (std::size_t i = 0; i < n; ++i) op(data[off + i], h[i], l[i]);
    }
}

}  // namespace

void substitute(std::span<std::uint8_t> data, SubstState& s) {
    run_batched(data, s, [&s](std::uint8_t& d, std::uint8_t h, std::uint8_t l) {
        const auto u = static_cast<std::uint8_t>((d ^ h) + s.prev);
        d = static_cast<std::uint8_t>(u ^ l);
        s.prev = d;
    });
}

void desubstitute(std::span<std::uint8_t> data, SubstState& s) {
    run_batched(data, s, [&s](std::uint8_t& c, std::uint8_t h, std::uint8_t l) {
        const std::uint8_t cipher = c;
        const auto t = static_cast<std::uint8_t>((cipher ^ l) - s.prev);
        c = static_cast<std::uint8_t>(t ^ h);
        s.prev = cipher;
    });
}

}  // namespace chaoscomp::subst
