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

#include "chaoscomp/keys.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>
#include <zlib.h>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <tuple>

namespace chaoscomp::keys {

using chaos::henon_format;
using chaos::logistic_format;
using chaos::lorenz_format;
using fxp::QFormat;

bool operator==(const ChaosKey& a, const ChaosKey& b) noexcept {
    return words(a) == words(b) && a.kp.threshold == b.kp.threshold;
}

std::array<std::int32_t, word_count> words(const ChaosKey& k) {
    return {k.kp.x0.raw(),  k.kp.mu.raw(),  k.ks1.x0.raw(),    k.ks1.y0.raw(),
            k.ks1.a.raw(),  k.ks1.b.raw(),  k.ks2.x0.raw(),    k.ks2.y0.raw(),
            k.ks2.z0.raw(), k.ks2.sigma.raw(), k.ks2.rho.raw(), k.ks2.beta.raw()};
}

ChaosKey from_words(const std::array<std::int32_t, word_count>& w, std::uint8_t threshold) {
    auto lg = [&](std::size_t i) { return Fx32::from_raw(w[i], logistic_format); };
    auto hn = [&](std::size_t i) { return Fx32::from_raw(w[i], henon_format); };
    auto lz = [&](std::size_t i) { return Fx32::from_raw(w[i], lorenz_format); };
    return ChaosKey{{lg(0), lg(1), threshold},
                    {hn(2), hn(3), hn(4), hn(5)},
                    {lz(6), lz(7), lz(8), lz(9), lz(10), lz(11)}};
}

ChaosKey flip_key_bit(const ChaosKey& k, std::size_t bit) {
    if (bit >= key_bits) {
        throw Error(Errc::contract_violation, "key bit index out of range");
    }
    auto w = words(k);
    std::uint8_t t = k.kp.threshold;
    if (bit < word_count * 32) {
        auto u = static_cast<std::uint32_t>(w[bit / 32]);
        u ^= std::uint32_t{1} << (bit % 32);
        w[bit / 32] = static_cast<std::int32_t>(u);
    } else {
        t = static_cast<std::uint8_t>(t ^ (1u << (bit - word_count * 32)));
    }
    return from_words(w, t);
}

namespace {

std::int32_t raw_of(double v, QFormat q) { return Fx32::from_double(v, q).raw(); }

bool in_closed(Fx32 v, Range r) {
    return v.raw() >= raw_of(r.lo, v.format()) && v.raw() <= raw_of(r.hi, v.format());
}

std::string range_text(Range r) {
    auto fmt = [](double d) {
        std::string s = std::to_string(d);
        s.erase(s.find_last_not_of('0') + 1);
        if (s.back() == '.') s.pop_back();
        return s;
    };
    return "[" + fmt(r.lo) + "," + fmt(r.hi) + "]";
}

// Runs the warm-up, then probes the keystream phase for saturation and for
// a cycle shorter than min_keystream_period (Brent's cycle detection).
// Returns an empty string on success, otherwise a description of the failure.
template <class Map, class Pack>
std::string warmup_guard(typename Map::State s, Pack pack) {
    try {
        s = Map::warm_up(s, chaos::warmup_iterations);
    } catch (const Error& e) {
        if (e.code() != Errc::divergent_trajectory) throw;
        return std::string(Map::name) + " warm-up saturates (divergent trajectory)";
    }
    auto tortoise = pack(s);
    std::size_t power = 1;
    std::size_t lambda = 0;
    try {
        for (std::size_t i = 0; i < probe_iterations; ++i) {
            s = Map::step(s);
            ++lambda;
            const auto hare = pack(s);
            if (hare == tortoise) {
                if (lambda < min_keystream_period) {
                    return std::string(Map::name) + " trajectory falls into a cycle of period " +
                           std::to_string(lambda);
                }
                break;
            }
            if (lambda == power) {
                tortoise = hare;
                power *= 2;
                lambda = 0;
            }
        }
    } catch (const Error& e) {
        if (e.code() != Errc::divergent_trajectory) throw;
        return std::string(Map::name) + " trajectory saturates after warm-up (divergent trajectory)";
    }
    return {};
}

}  // namespace

Validation validate_key(const ChaosKey& k) {
    Validation v;
    auto violation = [&](std::string msg) { v.violations.push_back(std::move(msg)); };
    auto check_format = [&](Fx32 f, QFormat q, const char* name) {
        if (f.format() != q) {
            violation(std::string(name) + " must be " + fxp::to_string(q));
            return false;
        }
        return true;
    };

    // Permutation subkey.
    bool logistic_ok = check_format(k.kp.x0, logistic_format, "kp.x0") &&
                       check_format(k.kp.mu, logistic_format, "kp.mu");
    if (logistic_ok) {
        const std::int32_t x = k.kp.x0.raw();
        const std::int32_t one = Fx32::one(logistic_format).raw();
        if (x == 0 || x == one || x == one / 2) {
            violation("kp.x0: fixed point seed");
            logistic_ok = false;
        } else if (x < 0 || x > one) {
            violation("kp.x0: outside (0,1)");
            logistic_ok = false;
        }
        if (k.kp.mu.raw() < raw_of(logistic_mu_range.lo, logistic_format)) {
            violation("kp.mu: outside chaotic range [3.57,4)");
            logistic_ok = false;
        }
    }
    if (k.kp.threshold == 0 || k.kp.threshold == 255) {
        v.warnings.push_back("threshold " + std::to_string(k.kp.threshold) +
                             " makes the merge phase degenerate (all or no swaps)");
    }

    // Henon subkey.
    bool henon_ok = check_format(k.ks1.x0, henon_format, "ks1.x0") &&
                    check_format(k.ks1.y0, henon_format, "ks1.y0") &&
                    check_format(k.ks1.a, henon_format, "ks1.a") &&
                    check_format(k.ks1.b, henon_format, "ks1.b");
    if (henon_ok) {
        const std::tuple<Fx32, Range, const char*> checks[] = {
            {k.ks1.x0, henon_x0_range, "ks1.x0"},
            {k.ks1.y0, henon_y0_range, "ks1.y0"},
            {k.ks1.a, henon_a_range, "ks1.a"},
            {k.ks1.b, henon_b_range, "ks1.b"},
        };
        for (const auto& [f, r, name] : checks) {
            if (!in_closed(f, r)) {
                violation(std::string(name) + ": outside " + range_text(r));
                henon_ok = false;
            }
        }
    }

    // Lorenz subkey.
    bool lorenz_ok = check_format(k.ks2.x0, lorenz_format, "ks2.x0") &&
                     check_format(k.ks2.y0, lorenz_format, "ks2.y0") &&
                     check_format(k.ks2.z0, lorenz_format, "ks2.z0") &&
                     check_format(k.ks2.sigma, lorenz_format, "ks2.sigma") &&
                     check_format(k.ks2.rho, lorenz_format, "ks2.rho") &&
                     check_format(k.ks2.beta, lorenz_format, "ks2.beta");
    if (lorenz_ok) {
        if (k.ks2.x0.raw() == 0 && k.ks2.y0.raw() == 0 && k.ks2.z0.raw() == 0) {
            violation("ks2: fixed point seed (0,0,0)");
            lorenz_ok = false;
        }
        const std::tuple<Fx32, Range, const char*> checks[] = {
            {k.ks2.x0, lorenz_xy0_range, "ks2.x0"},
            {k.ks2.y0, lorenz_xy0_range, "ks2.y0"},
            {k.ks2.z0, lorenz_z0_range, "ks2.z0"},
            {k.ks2.sigma, lorenz_sigma_range, "ks2.sigma"},
            {k.ks2.rho, lorenz_rho_range, "ks2.rho"},
            {k.ks2.beta, lorenz_beta_range, "ks2.beta"},
        };
        for (const auto& [f, r, name] : checks) {
            if (!in_closed(f, r)) {
                violation(std::string(name) + ": outside " + range_text(r));
                lorenz_ok = false;
            }
        }
    }

    // Warm-up guards only run on subkeys that passed their range checks.
    if (logistic_ok) {
        auto msg = warmup_guard<chaos::LogisticMap>(
            chaos::LogisticState{k.kp.x0, k.kp.mu},
            [](const chaos::LogisticState& s) { return s.x.raw(); });
        if (!msg.empty()) violation(std::move(msg));
    }
    if (henon_ok) {
        auto msg = warmup_guard<chaos::HenonMap>(
            chaos::HenonState{k.ks1.x0, k.ks1.y0, k.ks1.a, k.ks1.b},
            [](const chaos::HenonState& s) { return std::pair{s.x.raw(), s.y.raw()}; });
        if (!msg.empty()) violation(std::move(msg));
    }
    if (lorenz_ok) {
        auto msg = warmup_guard<chaos::LorenzMap>(
            chaos::LorenzState{k.ks2.x0, k.ks2.y0, k.ks2.z0, k.ks2.sigma, k.ks2.rho, k.ks2.beta},
            [](const chaos::LorenzState& s) {
                return std::tuple{s.x.raw(), s.y.raw(), s.z.raw()};
            });
        if (!msg.empty()) violation(std::move(msg));
    }
    return v;
}

namespace {

// Uniform raw word in [lo, hi]. The 64-bit draw keeps modulo bias below
// 2^-32 and, unlike std::uniform_int_distribution, is identical across
// standard libraries.
std::int32_t draw_raw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return static_cast<std::int32_t>(lo + static_cast<std::int64_t>(rng() % span));
}

std::int32_t draw_in(std::mt19937_64& rng, Range r, QFormat q) {
    return draw_raw(rng, raw_of(r.lo, q), raw_of(r.hi, q));
}

}  // namespace

ChaosKey keygen(std::mt19937_64& entropy) {
    constexpr int max_rejections = 1000;
    const std::int32_t one = Fx32::one(logistic_format).raw();
    for (int attempt = 0; attempt <= max_rejections; ++attempt) {
        std::array<std::int32_t, word_count> w{};
        w[0] = draw_raw(entropy, 1, one - 1);
        w[1] = draw_raw(entropy, raw_of(logistic_mu_range.lo, logistic_format),
                        std::numeric_limits<std::int32_t>::max());
        w[2] = draw_in(entropy, henon_x0_range, henon_format);
        w[3] = draw_in(entropy, henon_y0_range, henon_format);
        w[4] = draw_in(entropy, henon_a_range, henon_format);
        w[5] = draw_in(entropy, henon_b_range, henon_format);
        w[6] = draw_in(entropy, lorenz_xy0_range, lorenz_format);
        w[7] = draw_in(entropy, lorenz_xy0_range, lorenz_format);
        w[8] = draw_in(entropy, lorenz_z0_range, lorenz_format);
        w[9] = draw_in(entropy, lorenz_sigma_range, lorenz_format);
        w[10] = draw_in(entropy, lorenz_rho_range, lorenz_format);
        w[11] = draw_in(entropy, lorenz_beta_range, lorenz_format);
        const auto threshold = static_cast<std::uint8_t>(entropy() & 0xFF);
        ChaosKey k = from_words(w, threshold);
        if (validate_key(k).ok()) return k;
    }
    throw Error(Errc::keygen_failure, "no valid key after 1000 rejected candidates");
}

ChaosKey keygen() {
    std::random_device rd;
    std::seed_seq seq{rd(), rd(), rd(), rd(), rd(), rd(), rd(), rd()};
    std::mt19937_64 rng(seq);
    return keygen(rng);
}

namespace {

constexpr std::array<std::uint8_t, 4> key_magic{'S', 'O', 'C', 'K'};
constexpr std::uint8_t key_version = 0x01;
constexpr std::size_t crc_offset = key_file_size - 4;

void put_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint32_t get_be32(std::span<const std::uint8_t> b) {
    return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) |
           std::uint32_t{b[3]};
}

std::uint32_t crc32_of(std::span<const std::uint8_t> b) {
    return static_cast<std::uint32_t>(
        ::crc32(::crc32(0L, Z_NULL, 0), b.data(), static_cast<uInt>(b.size())));
}

}  // namespace

std::vector<std::uint8_t> serialize_key(const ChaosKey& k) {
    std::vector<std::uint8_t> out(key_magic.begin(), key_magic.end());
    out.reserve(key_file_size);
    out.push_back(key_version);
    for (std::int32_t w : words(k)) put_be32(out, static_cast<std::uint32_t>(w));
    out.push_back(k.kp.threshold);
    put_be32(out, crc32_of(out));
    return out;
}

ChaosKey parse_key(std::span<const std::uint8_t> bytes) {
    if (bytes.size() != key_file_size) {
        throw Error(Errc::key_parse_error, "key must be " + std::to_string(key_file_size) +
                                               " bytes, got " + std::to_string(bytes.size()));
    }
    if (!std::equal(key_magic.begin(), key_magic.end(), bytes.begin())) {
        throw Error(Errc::key_parse_error, "bad key magic");
    }
    if (bytes[4] != key_version) {
        throw Error(Errc::key_parse_error, "unsupported key version " + std::to_string(bytes[4]));
    }
    if (crc32_of(bytes.first(crc_offset)) != get_be32(bytes.subspan(crc_offset))) {
        throw Error(Errc::key_parse_error, "key checksum mismatch");
    }
    std::array<std::int32_t, word_count> w{};
    for (std::size_t i = 0; i < word_count; ++i) {
        w[i] = static_cast<std::int32_t>(get_be32(bytes.subspan(5 + 4 * i)));
    }
    ChaosKey k = from_words(w, bytes[5 + 4 * word_count]);
    const Validation v = validate_key(k);
    if (!v.ok()) throw Error(Errc::invalid_key, "key fails validation: " + v.violations.front());
    return k;
}

ChaosKey load_key_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open key file");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return parse_key(bytes);
}

void save_key_file(const std::string& path, const ChaosKey& k) {
    const auto bytes = serialize_key(k);
    const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, S_IRUSR | S_IWUSR);
    if (fd < 0) throw Error(Errc::io_error, "cannot create key file");
    ::fchmod(fd, S_IRUSR | S_IWUSR);
    const auto written = ::write(fd, bytes.data(), bytes.size());
    const bool closed = ::close(fd) == 0;
    if (written != static_cast<ssize_t>(bytes.size()) || !closed) {
        throw Error(Errc::io_error, "short write to key file");
    }
}

int keyspace_exponent(int precision_digits, int components) {
    if (precision_digits < 1 || components < 0) {
        throw Error(Errc::contract_violation, "keyspace needs precision >= 1 and components >= 0");
    }
    return precision_digits * components;
}

chaos::LogisticGenerator make_logistic(const ChaosKey& k) {
    return chaos::LogisticGenerator(chaos::LogisticState{k.kp.x0, k.kp.mu});
}

chaos::HenonGenerator make_henon(const ChaosKey& k) {
    return chaos::HenonGenerator(chaos::HenonState{k.ks1.x0, k.ks1.y0, k.ks1.a, k.ks1.b});
}

chaos::LorenzGenerator make_lorenz(const ChaosKey& k) {
    return chaos::LorenzGenerator(
        chaos::LorenzState{k.ks2.x0, k.ks2.y0, k.ks2.z0, k.ks2.sigma, k.ks2.rho, k.ks2.beta});
}

}  // namespace chaoscomp::keys
