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
 * @file subst.hpp
 * @brief Byte substitution chain applied after compression:
 *
 *     t = d XOR H;  u = (t + prev) mod 256;  c = u XOR L;  prev = c
 *
 * with H and L keystream bytes from the Henon and Lorenz generators and prev
 * starting at 0 for a stream.
 */

#pragma once

#include <cstdint>
#include <span>

#include "chaoscomp/chaos.hpp"

namespace chaoscomp::subst {

struct SubstState {
    chaos::ByteSource& henon;
    chaos::ByteSource& lorenz;
    std::uint8_t prev = 0;
};

/// In place. Consumes one Henon and one Lorenz byte per data byte.
void substitute(std::span<std::uint8_t> data, SubstState& s);

/// Exact inverse of substitute for generators at the same position.
void desubstitute(std::span<std::uint8_t> data, SubstState& s);

}  // namespace chaoscomp::subst
