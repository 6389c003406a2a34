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

#include "chaoscomp/fxp.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace chaoscomp::fxp {

QFormat qformat_from_int_bits(int bits) {
    switch (bits) {
        case 2: return QFormat::q2_29;
        case 4: return QFormat::q4_27;
        case 10: return QFormat::q10_21;
        default:
            throw Error(Errc::contract_violation,
                        "unsupported Q format with " + std::to_string(bits) + " integer bits");
    }
}

Fx32 Fx32::from_double(double value, QFormat q) {
    if (!std::isfinite(value)) {
        throw Error(Errc::contract_violation, "cannot convert a non-finite value to fixed point");
    }
    const double scaled = std::nearbyint(std::ldexp(value, frac_bits(q)));
    if (scaled > static_cast<double>(std::numeric_limits<std::int32_t>::max())) {
        return from_raw(std::numeric_limits<std::int32_t>::max(), q, true);
    }
    if (scaled < static_cast<double>(std::numeric_limits<std::int32_t>::min())) {
        return from_raw(std::numeric_limits<std::int32_t>::min(), q, true);
    }
    return from_raw(static_cast<std::int32_t>(scaled), q);
}

double Fx32::to_double() const noexcept {
    return std::ldexp(static_cast<double>(raw_), -frac_bits(q_));
}

namespace detail {

void throw_format_mismatch(QFormat a, QFormat b) {
    throw Error(Errc::contract_violation,
                "fixed-point format mismatch: " + to_string(a) + " vs " + to_string(b));
}

}  // namespace detail

std::string to_string(QFormat q) {
    return "Q" + std::to_string(int_bits(q)) + "." + std::to_string(frac_bits(q));
}

std::ostream& operator<<(std::ostream& os, Fx32 v) {
    os << v.to_double() << " [" << to_string(v.format()) << " raw=" << v.raw();
    if (v.saturated()) os << " sat";
    return os << ']';
}

namespace {

const char* op_name(GoldenOp op) {
    switch (op) {
        case GoldenOp::mul: return "mul";
        case GoldenOp::add: return "add";
        case GoldenOp::sub: return "sub";
        case GoldenOp::neg: return "neg";
    }
    return "?";
}

GoldenOp op_from_name(const std::string& name) {
    if (name == "mul") return GoldenOp::mul;
    if (name == "add") return GoldenOp::add;
    if (name == "sub") return GoldenOp::sub;
    if (name == "neg") return GoldenOp::neg;
    throw Error(Errc::format_error, "unknown golden-vector op '" + name + "'");
}

std::int32_t parse_hex_word(const std::string& text) {
    if (text.empty() || text.size() > 8) {
        throw Error(Errc::format_error, "bad hex word '" + text + "'");
    }
    std::size_t used = 0;
    unsigned long value = 0;
    try {
        value = std::stoul(text, &used, 16);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size()) throw Error(Errc::format_error, "bad hex word '" + text + "'");
    return static_cast<std::int32_t>(static_cast<std::uint32_t>(value));
}

}  // namespace

GoldenVector evaluate(QFormat q, GoldenOp op, std::int32_t a, std::int32_t b) {
    const Fx32 fa = Fx32::from_raw(a, q);
    const Fx32 fb = Fx32::from_raw(b, q);
    Fx32 r;
    switch (op) {
        case GoldenOp::mul: r = mul(fa, fb); break;
        case GoldenOp::add: r = add(fa, fb); break;
        case GoldenOp::sub: r = sub(fa, fb); break;
        case GoldenOp::neg: r = neg(fa); b = 0; break;
    }
    return GoldenVector{q, op, a, b, r.raw(), r.saturated()};
}

std::string format_golden_line(const GoldenVector& v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%d %s %08x %08x %08x %d", int_bits(v.q), op_name(v.op),
                  static_cast<std::uint32_t>(v.a), static_cast<std::uint32_t>(v.b),
                  static_cast<std::uint32_t>(v.result), v.saturated ? 1 : 0);
    return buf;
}

GoldenVector parse_golden_line(const std::string& line) {
    std::istringstream in(line);
    int bits = 0;
    std::string op, a, b, r;
    int flag = -1;
    if (!(in >> bits >> op >> a >> b >> r >> flag) || (flag != 0 && flag != 1)) {
        throw Error(Errc::format_error, "malformed golden-vector line '" + line + "'");
    }
    return GoldenVector{qformat_from_int_bits(bits), op_from_name(op), parse_hex_word(a),
                        parse_hex_word(b), parse_hex_word(r), flag == 1};
}

std::vector<GoldenVector> read_golden_file(std::istream& in) {
    std::vector<GoldenVector> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        out.push_back(parse_golden_line(line));
    }
    return out;
}

}  // namespace chaoscomp::fxp
