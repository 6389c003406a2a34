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

#include "chaoscomp/characterize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "chaoscomp/errors.hpp"
#include "chaoscomp/stats.hpp"

namespace chaoscomp::chaos {

std::string_view map_name(MapId id) noexcept {
    switch (id) {
        case MapId::logistic: return "logistic";
        case MapId::tent: return "tent";
        case MapId::henon: return "henon";
        case MapId::lorenz: return "lorenz";
        case MapId::chirikov: return "chirikov";
    }
    return "?";
}

MapId map_from_name(std::string_view name) {
    for (MapId id : {MapId::logistic, MapId::tent, MapId::henon, MapId::lorenz, MapId::chirikov}) {
        if (map_name(id) == name) return id;
    }
    throw Error(Errc::contract_violation, "unknown map '" + std::string(name) + "'");
}

CharacterizationMap CharacterizationMap::logistic(double mu) { return {MapId::logistic, {mu}}; }
CharacterizationMap CharacterizationMap::tent(double mu) { return {MapId::tent, {mu}}; }
CharacterizationMap CharacterizationMap::henon(double a, double b) { return {MapId::henon, {a, b}}; }
CharacterizationMap CharacterizationMap::lorenz(double sigma, double rho, double beta, double dt) {
    return {MapId::lorenz, {sigma, rho, beta, dt}};
}
CharacterizationMap CharacterizationMap::chirikov(double k) { return {MapId::chirikov, {k}}; }

CharacterizationMap CharacterizationMap::defaults(MapId id) {
    switch (id) {
        case MapId::logistic: return logistic(3.98);
        case MapId::tent: return tent(1.98);
        case MapId::henon: return henon(1.4, 0.3);
        case MapId::lorenz: return lorenz(10.0, 28.0, 2.67);
        case MapId::chirikov: return chirikov(10.0);
    }
    return logistic(3.98);
}

CharacterizationMap CharacterizationMap::with_scan_param(double value) const {
    CharacterizationMap m = *this;
    m.params[id == MapId::lorenz ? 1 : 0] = value;
    return m;
}

double tent_step(double x, double mu) noexcept { return x < 0.5 ? mu * x : mu * (1.0 - x); }

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_angle(double v) noexcept {
    double r = std::fmod(v, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
}

}  // namespace

ChirikovPoint chirikov_step(ChirikovPoint p, double k) noexcept {
    const double x = wrap_angle(p.x + k * std::sin(p.y));
    const double y = wrap_angle(p.y + x);
    return {x, y};
}

namespace {

using Vec3 = std::array<double, 3>;

// Orbit of one characterization map in double precision. Unused components
// of the state stay zero.
class Orbit {
public:
    explicit Orbit(const CharacterizationMap& m) : m_(m) {
        switch (m.id) {
            case MapId::logistic:
            case MapId::tent: s_ = {0.3, 0.0, 0.0}; break;
            case MapId::henon: s_ = {0.1, 0.1, 0.0}; break;
            case MapId::lorenz: s_ = {1.0, 1.0, 1.0}; break;
            case MapId::chirikov: s_ = {0.5, 0.5, 0.0}; break;
        }
    }

    double x() const noexcept { return s_[0]; }
    const Vec3& state() const noexcept { return s_; }

    void step() noexcept { s_ = next(s_); }

    // Tangent map applied to v at the current state.
    Vec3 tangent(const Vec3& v) const noexcept {
        const auto& p = m_.params;
        const auto [x, y, z] = s_;
        switch (m_.id) {
            case MapId::logistic: return {p[0] * (1.0 - 2.0 * x) * v[0], 0.0, 0.0};
            case MapId::tent: return {(x < 0.5 ? p[0] : -p[0]) * v[0], 0.0, 0.0};
            case MapId::henon: return {-2.0 * p[0] * x * v[0] + v[1], p[1] * v[0], 0.0};
            case MapId::lorenz: {
                const double sigma = p[0], rho = p[1], beta = p[2], dt = p[3];
                return {v[0] + dt * (-sigma * v[0] + sigma * v[1]),
                        v[1] + dt * ((rho - z) * v[0] - v[1] - x * v[2]),
                        v[2] + dt * (y * v[0] + x * v[1] - beta * v[2])};
            }
            case MapId::chirikov: {
                const double kc = p[0] * std::cos(y);
                return {v[0] + kc * v[1], v[0] + (1.0 + kc) * v[1], 0.0};
            }
        }
        return v;
    }

private:
    Vec3 next(const Vec3& s) const noexcept {
        const auto& p = m_.params;
        const auto [x, y, z] = s;
        switch (m_.id) {
            case MapId::logistic: return {p[0] * x * (1.0 - x), 0.0, 0.0};
            case MapId::tent: return {tent_step(x, p[0]), 0.0, 0.0};
            case MapId::henon: return {1.0 + y - p[0] * x * x, p[1] * x, 0.0};
            case MapId::lorenz: {
                const double sigma = p[0], rho = p[1], beta = p[2], dt = p[3];
                return {x + dt * sigma * (y - x), y + dt * (x * (rho - z) - y),
                        z + dt * (x * y - beta * z)};
            }
            case MapId::chirikov: {
                const ChirikovPoint q = chirikov_step({x, y}, p[0]);
                return {q.x, q.y, 0.0};
            }
        }
        return s;
    }

    CharacterizationMap m_;
    Vec3 s_{};
};

double norm(const Vec3& v) noexcept { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

int fractional_bits(MapId id) noexcept {
    switch (id) {
        case MapId::logistic:
        case MapId::tent: return 29;
        case MapId::henon:
        case MapId::chirikov: return 27;
        case MapId::lorenz: return 21;
    }
    return 29;
}

}  // namespace

double lyapunov_exponent(const CharacterizationMap& map, std::size_t n) {
    if (n < 100000) {
        throw Error(Errc::contract_violation, "lyapunov_exponent needs at least 1e5 iterations");
    }
    Orbit orbit(map);
    for (std::size_t i = 0; i < transient_iterations; ++i) orbit.step();

    Vec3 v{1.0, 0.0, 0.0};
    if (map.id == MapId::henon || map.id == MapId::chirikov) v = {std::sqrt(0.5), std::sqrt(0.5), 0.0};
    if (map.id == MapId::lorenz) v = {1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)};

    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        v = orbit.tangent(v);
        orbit.step();
        const double len = norm(v);
        const double log_len = std::log(len);
        if (!std::isfinite(log_len)) {
            throw Error(Errc::numerical_error, "non-finite derivative at iteration " +
                                                   std::to_string(i) + " of the " +
                                                   std::string(map_name(map.id)) + " map");
        }
        sum += log_len;
        for (auto& c : v) c /= len;
    }
    double le = sum / static_cast<double>(n);
    if (map.id == MapId::lorenz) le /= map.params[3];
    return le;
}

std::vector<BifurcationRow> bifurcation_scan(const CharacterizationMap& map, double lo, double hi,
                                             std::size_t steps, std::size_t samples) {
    if (steps < 2) throw Error(Errc::contract_violation, "bifurcation scan needs steps >= 2");
    std::vector<BifurcationRow> rows;
    rows.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const double param = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
        Orbit orbit(map.with_scan_param(param));
        for (std::size_t t = 0; t < transient_iterations; ++t) orbit.step();
        BifurcationRow row{param, {}};
        row.values.reserve(samples);
        for (std::size_t s = 0; s < samples; ++s) {
            orbit.step();
            row.values.push_back(orbit.x());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::size_t count_distinct(std::span<const double> values, double tol) {
    if (values.empty()) return 0;
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::size_t clusters = 1;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i] - sorted[i - 1] > tol) ++clusters;
    }
    return clusters;
}

std::vector<std::uint8_t> characterization_keystream(const CharacterizationMap& map, std::size_t n) {
    Orbit orbit(map);
    for (std::size_t i = 0; i < transient_iterations; ++i) orbit.step();
    const int bits = fractional_bits(map.id);
    std::vector<std::uint8_t> out(n);
    for (auto& b : out) {
        orbit.step();
        const auto word = static_cast<std::int64_t>(std::floor(std::ldexp(orbit.x(), bits)));
        b = static_cast<std::uint8_t>(static_cast<std::uint64_t>(word) & 0xFFu);
    }
    return out;
}

MapBenchmark map_benchmark(const CharacterizationMap& map, std::size_t n,
                           std::span<const std::uint8_t> corpus) {
    if (corpus.empty() || n < 2) {
        throw Error(Errc::contract_violation, "map benchmark needs a corpus and n >= 2");
    }
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::uint8_t> ks = characterization_keystream(map, n);
    const auto t1 = std::chrono::steady_clock::now();

    std::vector<std::uint8_t> plain(n), enc(n);
    for (std::size_t i = 0; i < n; ++i) {
        plain[i] = corpus[i % corpus.size()];
        enc[i] = plain[i] ^ ks[i];
    }
    const double seconds = std::chrono::duration<double>(t1 - t0).count();
    return {map.id, static_cast<double>(n) / std::max(seconds, 1e-9),
            analysis::pearson_cc(plain, enc)};
}

void write_bifurcation_csv(std::ostream& os, std::span<const BifurcationRow> rows) {
    os << "param,value\n";
    const auto old = os.precision(17);
    for (const auto& row : rows) {
        for (double v : row.values) os << row.param << ',' << v << '\n';
    }
    os.precision(old);
}

}  // namespace chaoscomp::chaos
