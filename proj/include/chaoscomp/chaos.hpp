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
 * @file chaos.hpp
 * @brief Fixed-point chaotic maps used by the cipher and their keystream generators.
 *
 * Logistic and Tent-family states live in Q2.29, Henon in Q4.27, Lorenz in
 * Q10.21. Lorenz is integrated with forward Euler at dt = 1/128, so the dt
 * multiply is an exact arithmetic shift.
 */

#pragma once

#include <cstdint>
#include <span>

#include "chaoscomp/fxp.hpp"

namespace chaoscomp::chaos {

using fxp::Fx32;
using fxp::QFormat;

inline constexpr QFormat logistic_format = QFormat::q2_29;
inline constexpr QFormat henon_format = QFormat::q4_27;
inline constexpr QFormat lorenz_format = QFormat::q10_21;

/// Euler step for Lorenz, 1/128 in Q10.21.
inline constexpr Fx32 lorenz_dt = Fx32::from_raw(std::int32_t{1} << 14, lorenz_format);

/// Iterations discarded by every generator before the first keystream byte.
inline constexpr std::size_t warmup_iterations = 1024;

struct LogisticState {
    Fx32 x;
    Fx32 mu;
};

struct HenonState {
    Fx32 x;
    Fx32 y;
    Fx32 a;
    Fx32 b;
};

struct LorenzState {
    Fx32 x;
    Fx32 y;
    Fx32 z;
    Fx32 sigma;
    Fx32 rho;
    Fx32 beta;
};

// One iterate each. A saturated intermediate throws divergent_trajectory.
LogisticState logistic_step(const LogisticState& s);
HenonState henon_step(const HenonState& s);
LorenzState lorenz_step(const LorenzState& s);

// `n` warm-up iterates carried out with 32 extra fractional bits (64-bit
// words, same integer range), truncated back to 32 bits at the end. In plain
// 32-bit iteration truncation can merge trajectories whose seeds differ by
// one ulp; the wide phase lets them separate first. Saturation throws
// divergent_trajectory.
LogisticState logistic_warm_up(const LogisticState& s, std::size_t n);
HenonState henon_warm_up(const HenonState& s, std::size_t n);
LorenzState lorenz_warm_up(const LorenzState& s, std::size_t n);

/// Sequential byte stream. Implemented by the map generators and by test stubs.
class ByteSource {
public:
    virtual ~ByteSource() = default;
    virtual std::uint8_t next() = 0;
    virtual void fill(std::span<std::uint8_t> out) {
        for (auto& b : out) b = next();
    }
};

struct LogisticMap {
    using State = LogisticState;
    static constexpr const char* name = "logistic";
    static State step(const State& s) { return logistic_step(s); }
    static State warm_up(const State& s, std::size_t n) { return logistic_warm_up(s, n); }
};

struct HenonMap {
    using State = HenonState;
    static constexpr const char* name = "henon";
    static State step(const State& s) { return henon_step(s); }
    static State warm_up(const State& s, std::size_t n) { return henon_warm_up(s, n); }
};

struct LorenzMap {
    using State = LorenzState;
    static constexpr const char* name = "lorenz";
    static State step(const State& s) { return lorenz_step(s); }
    static State warm_up(const State& s, std::size_t n) { return lorenz_warm_up(s, n); }
};

/// Keystream source for one map: each byte advances the map once and emits
/// the low byte of the x word. Single owner; copying forks the stream.
template <class Map>
class MapGenerator final : public ByteSource {
public:
    using State = typename Map::State;

    /// Runs `warmup` wide iterations before returning. Throws divergent_trajectory
    /// if the warm-up saturates.
    explicit MapGenerator(const State& seed, std::size_t warmup = warmup_iterations)
        : state_(Map::warm_up(seed, warmup)) {}

    std::uint8_t next() override {
        state_ = Map::step(state_);
        ++steps_;
        return fxp::low_byte(state_.x);
    }

    void fill(std::span<std::uint8_t> out) override {
        for (auto& b : out) {
            state_ = Map::step(state_);
            b = fxp::low_byte(state_.x);
        }
        steps_ += out.size();
    }

    const State& state() const noexcept { return state_; }

    /// Keystream bytes drawn since construction (warm-up excluded).
    std::uint64_t steps() const noexcept { return steps_; }

private:
    State state_;
    std::uint64_t steps_ = 0;
};

using LogisticGenerator = MapGenerator<LogisticMap>;
using HenonGenerator = MapGenerator<HenonMap>;
using LorenzGenerator = MapGenerator<LorenzMap>;

}  // namespace chaoscomp::chaos
