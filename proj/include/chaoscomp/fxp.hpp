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
 * @file fxp.hpp
 * @brief Saturating 32-bit two's-complement fixed point with a per-value Q format.
 *
 * A word in Q<F>.<31-F> holds raw / 2^(31-F) and covers [-2^F, 2^F). Every
 * operation is defined on raw integers only, so results are bit-identical on
 * any platform. Products are truncated toward negative infinity. Results that
 * leave the representable range saturate and carry a flag instead of wrapping.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "chaoscomp/errors.hpp"

namespace chaoscomp::fxp {

/// Integer-bit count of the format; fractional bits are 31 minus this.
enum class QFormat : std::uint8_t {
    q2_29 = 2,
    q4_27 = 4,
    q10_21 = 10,
};

constexpr int int_bits(QFormat q) noexcept { return static_cast<int>(q); }
constexpr int frac_bits(QFormat q) noexcept { return 31 - int_bits(q); }

/// Parses the integer-bit count (2, 4 or 10). Throws contract_violation otherwise.
QFormat qformat_from_int_bits(int bits);

class Fx32 {
public:
    constexpr Fx32() = default;

    static constexpr Fx32 from_raw(std::int32_t raw, QFormat q, bool saturated = false) noexcept {
        Fx32 v;
        v.raw_ = raw;
        v.q_ = q;
        v.saturated_ = saturated;
        return v;
    }

    /// Nearest representable value; out-of-range input saturates with the flag set.
    static Fx32 from_double(double value, QFormat q);

    static constexpr Fx32 one(QFormat q) noexcept {
        return from_raw(std::int32_t{1} << frac_bits(q), q);
    }

    constexpr std::int32_t raw() const noexcept { return raw_; }
    constexpr QFormat format() const noexcept { return q_; }
    constexpr bool saturated() const noexcept { return saturated_; }
    double to_double() const noexcept;

    /// Same format and raw word; the saturation flag is not part of the value.
    friend constexpr bool operator==(Fx32 a, Fx32 b) noexcept {
        return a.raw_ == b.raw_ && a.q_ == b.q_;
    }

private:
    std::int32_t raw_ = 0;
    QFormat q_ = QFormat::q2_29;
    bool saturated_ = false;
};

namespace detail {

[[noreturn]] void throw_format_mismatch(QFormat a, QFormat b);

constexpr Fx32 clamp_to_word(std::int64_t wide, QFormat q) noexcept {
    constexpr std::int64_t hi = std::numeric_limits<std::int32_t>::max();
    constexpr std::int64_t lo = std::numeric_limits<std::int32_t>::min();
    if (wide > hi) return Fx32::from_raw(static_cast<std::int32_t>(hi), q, true);
    if (wide < lo) return Fx32::from_raw(static_cast<std::int32_t>(lo), q, true);
    return Fx32::from_raw(static_cast<std::int32_t>(wide), q);
}

inline void require_same(Fx32 a, Fx32 b) {
    if (a.format() != b.format()) throw_format_mismatch(a.format(), b.format());
}

}  // namespace detail

inline Fx32 mul(Fx32 a, Fx32 b) {
    detail::require_same(a, b);
    const std::int64_t wide = static_cast<std::int64_t>(a.raw()) * b.raw();
    // >> on signed operands is arithmetic (floor) since C++20.
    return detail::clamp_to_word(wide >> frac_bits(a.format()), a.format());
}

inline Fx32 add(Fx32 a, Fx32 b) {
    detail::require_same(a, b);
    return detail::clamp_to_word(static_cast<std::int64_t>(a.raw()) + b.raw(), a.format());
}

inline Fx32 sub(Fx32 a, Fx32 b) {
    detail::require_same(a, b);
    return detail::clamp_to_word(static_cast<std::int64_t>(a.raw()) - b.raw(), a.format());
}

inline Fx32 neg(Fx32 a) noexcept {
    return detail::clamp_to_word(-static_cast<std::int64_t>(a.raw()), a.format());
}

/// The 8 least-significant bits of the raw word.
constexpr std::uint8_t low_byte(Fx32 a) noexcept {
    return static_cast<std::uint8_t>(static_cast<std::uint32_t>(a.raw()) & 0xFFu);
}

std::string to_string(QFormat q);
std::ostream& operator<<(std::ostream& os, Fx32 v);

// Golden vectors: one line per case, `qformat op rawA rawB rawResult flag`,
// qformat as the integer-bit count in decimal, raw words as 8 lowercase hex
// digits, flag 0/1. Unary ops (neg) write rawB as 00000000.

enum class GoldenOp : std::uint8_t { mul, add, sub, neg };

struct GoldenVector {
    QFormat q = QFormat::q2_29;
    GoldenOp op = GoldenOp::mul;
    std::int32_t a = 0;
    std::int32_t b = 0;
    std::int32_t result = 0;
    bool saturated = false;

    friend bool operator==(const GoldenVector&, const GoldenVector&) = default;
};

/// Evaluates the op with this library and fills result/saturated.
GoldenVector evaluate(QFormat q, GoldenOp op, std::int32_t a, std::int32_t b);

std::string format_golden_line(const GoldenVector& v);
GoldenVector parse_golden_line(const std::string& line);
std::vector<GoldenVector> read_golden_file(std::istream& in);

}  // namespace chaoscomp::fxp
