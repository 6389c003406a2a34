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

#include "chaoscomp/chaos.hpp"

#include <limits>
#include <string>

namespace chaoscomp::chaos {

namespace {

[[noreturn]] void diverged(const char* map) {
    throw Error(Errc::divergent_trajectory,
                std::string(map) + " trajectory left the fixed-point range");
}

// Warm-up arithmetic: raw words widened by 32 fractional bits.
__extension__ typedef __int128 int128;

class Wide {
public:
    explicit Wide(QFormat q) : q_(q), shift_(63 - static_cast<int>(q)) {}

    std::int64_t widen(Fx32 v) const { return static_cast<std::int64_t>(v.raw()) * (std::int64_t{1} << 32); }
    Fx32 narrow(std::int64_t v) const { return Fx32::from_raw(static_cast<std::int32_t>(v >> 32), q_); }
    std::int64_t one() const { return std::int64_t{1} << shift_; }

    std::int64_t mul(std::int64_t a, std::int64_t b) {
        const int128 p = static_cast<int128>(a) * b;
        return fit(p >> shift_);
    }
    std::int64_t add(std::int64_t a, std::int64_t b) { return fit(static_cast<int128>(a) + b); }
    std::int64_t sub(std::int64_t a, std::int64_t b) { return fit(static_cast<int128>(a) - b); }

    bool saturated() const noexcept { return saturated_; }

private:
    std::int64_t fit(int128 v) {
        if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
            saturated_ = true;
            return 0;
        }
        return static_cast<std::int64_t>(v);
    }

    QFormat q_;
    int shift_;
    bool saturated_ = false;
};

}  // namespace

LogisticState logistic_step(const LogisticState& s) {
    using namespace fxp;
    const Fx32 mx = mul(s.mu, s.x);
    const Fx32 rest = sub(Fx32::one(logistic_format), s.x);
    const Fx32 x = mul(mx, rest);
    if (mx.saturated() || rest.saturated() || x.saturated()) diverged("logistic");
    return {x, s.mu};
}

HenonState henon_step(const HenonState& s) {
    using namespace fxp;
    const Fx32 sq = mul(s.x, s.x);
    const Fx32 asq = mul(s.a, sq);
    const Fx32 shifted = add(Fx32::one(henon_format), s.y);
    const Fx32 x = sub(shifted, asq);
    const Fx32 y = mul(s.b, s.x);
    if (sq.saturated() || asq.saturated() || shifted.saturated() || x.saturated() ||
        y.saturated()) {
        diverged("henon");
    }
    return {x, y, s.a, s.b};
}

LorenzState lorenz_step(const LorenzState& s) {
    using namespace fxp;
    const Fx32 yx = sub(s.y, s.x);
    const Fx32 rz = sub(s.rho, s.z);
    const Fx32 dx = mul(s.sigma, yx);
    const Fx32 xrz = mul(s.x, rz);
    const Fx32 dy = sub(xrz, s.y);
    const Fx32 xy = mul(s.x, s.y);
    const Fx32 bz = mul(s.beta, s.z);
    const Fx32 dz = sub(xy, bz);
    const Fx32 x = add(s.x, mul(lorenz_dt, dx));
    const Fx32 y = add(s.y, mul(lorenz_dt, dy));
    const Fx32 z = add(s.z, mul(lorenz_dt, dz));
    // dt < 1, so the dt products themselves cannot saturate.
    if (yx.saturated() || rz.saturated() || dx.saturated() || xrz.saturated() || dy.saturated() ||
        xy.saturated() || bz.saturated() || dz.saturated() || x.saturated() || y.saturated() ||
        z.saturated()) {
        diverged("lorenz");
    }
    return {x, y, z, s.sigma, s.rho, s.beta};
}

LogisticState logistic_warm_up(const LogisticState& s, std::size_t n) {
    Wide w(logistic_format);
    std::int64_t x = w.widen(s.x);
    const std::int64_t mu = w.widen(s.mu);
    for (std::size_t i = 0; i < n; ++i) {
        x = w.mul(w.mul(mu, x), w.sub(w.one(), x));
        if (w.saturated()) diverged("logistic");
    }
    return {w.narrow(x), s.mu};
}

HenonState henon_warm_up(const HenonState& s, std::size_t n) {
    Wide w(henon_format);
    std::int64_t x = w.widen(s.x);
    std::int64_t y = w.widen(s.y);
    const std::int64_t a = w.widen(s.a);
    const std::int64_t b = w.widen(s.b);
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t nx = w.sub(w.add(w.one(), y), w.mul(a, w.mul(x, x)));
        y = w.mul(b, x);
        x = nx;
        if (w.saturated()) diverged("henon");
    }
    return {w.narrow(x), w.narrow(y), s.a, s.b};
}

LorenzState lorenz_warm_up(const LorenzState& s, std::size_t n) {
    Wide w(lorenz_format);
    std::int64_t x = w.widen(s.x);
    std::int64_t y = w.widen(s.y);
    std::int64_t z = w.widen(s.z);
    const std::int64_t sigma = w.widen(s.sigma);
    const std::int64_t rho = w.widen(s.rho);
    const std::int64_t beta = w.widen(s.beta);
    const std::int64_t dt = w.widen(lorenz_dt);
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t dx = w.mul(sigma, w.sub(y, x));
        const std::int64_t dy = w.sub(w.mul(x, w.sub(rho, z)), y);
        const std::int64_t dz = w.sub(w.mul(x, y), w.mul(beta, z));
        x = w.add(x, w.mul(dt, dx));
        y = w.add(y, w.mul(dt, dy));
        z = w.add(z, w.mul(dt, dz));
        if (w.saturated()) diverged("lorenz");
    }
    return {w.narrow(x), w.narrow(y), w.narrow(z), s.sigma, s.rho, s.beta};
}

}  // namespace chaoscomp::chaos
