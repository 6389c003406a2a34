# Copyright 2026 The chaoscomp Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates the committed test fixtures from an exact-integer model.

Python integers are unbounded and >> floors, so the fixed-point rules
(product truncated toward -inf, saturate to the int32 range) are written
out directly with no shared code from the C++ library.

    python3 tests/oracles/gen_fixtures.py tests/data
"""

import random
import struct
import sys
import zlib
from pathlib import Path

I32_MIN = -(1 << 31)
I32_MAX = (1 << 31) - 1
FORMATS = (2, 4, 10)  # integer bits; fractional bits = 31 - q


def clamp(v):
    if v > I32_MAX:
        return I32_MAX, True
    if v < I32_MIN:
        return I32_MIN, True
    return v, False


def fx_op(q, op, a, b):
    f = 31 - q
    if op == "mul":
        return clamp((a * b) >> f)
    if op == "add":
        return clamp(a + b)
    if op == "sub":
        return clamp(a - b)
    if op == "neg":
        return clamp(-a)
    raise ValueError(op)


def to_raw(x, q):
    return int(round(x * (1 << (31 - q))))


def golden_vectors(rng, count):
    edges = [0, 1, -1, I32_MAX, I32_MIN, I32_MAX - 1, I32_MIN + 1]
    out = []
    for q in FORMATS:
        one = 1 << (31 - q)
        specials = edges + [one, -one, to_raw(1.9, q), to_raw(2.0, q) if q > 2 else I32_MAX,
                            to_raw(-1.9, q), one >> 1]
        for op in ("mul", "add", "sub", "neg"):
            for a in specials:
                for b in (specials if op != "neg" else [0]):
                    out.append((q, op, a, b))
    ops = ("mul", "add", "sub", "neg")
    while len(out) < count:
        q = rng.choice(FORMATS)
        op = rng.choice(ops)
        # Mix full-range words with small magnitudes so both the saturating
        # and the in-range paths get exercised.
        def word():
            if rng.random() < 0.5:
                return rng.randint(I32_MIN, I32_MAX)
            return rng.randint(-(1 << (31 - q + 1)), 1 << (31 - q + 1))
        a = word()
        b = word() if op != "neg" else 0
        out.append((q, op, a, b))
    return out


def hex32(v):
    return "%08x" % (v & 0xFFFFFFFF)


# --- map models --------------------------------------------------------------

class Diverged(Exception):
    pass


def chk(pair):
    v, sat = pair
    if sat:
        raise Diverged()
    return v


def mul(q, a, b):
    return chk(fx_op(q, "mul", a, b))


def add(q, a, b):
    return chk(fx_op(q, "add", a, b))


def sub(q, a, b):
    return chk(fx_op(q, "sub", a, b))


# The warm-up runs on 64-bit words: the same integer bits plus 32 extra
# fractional bits, truncated to 32 bits when it ends.
I64_MIN = -(1 << 63)
I64_MAX = (1 << 63) - 1


def wchk(v):
    if v < I64_MIN or v > I64_MAX:
        raise Diverged()
    return v


def wmul(q, a, b):
    return wchk((a * b) >> (63 - q))


def logistic_stream(x, mu, n, warmup=1024):
    q = 2
    one = 1 << 29
    wx, wmu = x << 32, mu << 32
    for _ in range(warmup):
        wx = wmul(q, wmul(q, wmu, wx), wchk((one << 32) - wx))
    x = wx >> 32
    out = []
    for _ in range(n):
        x = mul(q, mul(q, mu, x), sub(q, one, x))
        out.append(x & 0xFF)
    return out


def henon_stream(x, y, a, b, n, warmup=1024):
    q = 4
    one = 1 << 27
    wx, wy, wa, wb = (v << 32 for v in (x, y, a, b))
    for _ in range(warmup):
        wx, wy = wchk(wchk((one << 32) + wy) - wmul(q, wa, wmul(q, wx, wx))), wmul(q, wb, wx)
    x, y = wx >> 32, wy >> 32
    out = []
    for _ in range(n):
        x, y = sub(q, add(q, one, y), mul(q, a, mul(q, x, x))), mul(q, b, x)
        out.append(x & 0xFF)
    return out


def lorenz_stream(x, y, z, sigma, rho, beta, n, warmup=1024):
    q = 10
    dt = 1 << 14  # 1/128 with 21 fractional bits

    def step(m, add_, sub_, dt, x, y, z, sigma, rho, beta):
        dx = m(q, sigma, sub_(y, x))
        dy = sub_(m(q, x, sub_(rho, z)), y)
        dz = sub_(m(q, x, y), m(q, beta, z))
        return add_(x, m(q, dt, dx)), add_(y, m(q, dt, dy)), add_(z, m(q, dt, dz))

    w = [v << 32 for v in (x, y, z, sigma, rho, beta)]
    wx, wy, wz = w[:3]
    for _ in range(warmup):
        wx, wy, wz = step(wmul, lambda a, b: wchk(a + b), lambda a, b: wchk(a - b), dt << 32,
                          wx, wy, wz, *w[3:])
    x, y, z = wx >> 32, wy >> 32, wz >> 32
    out = []
    for _ in range(n):
        x, y, z = step(mul, lambda a, b: add(q, a, b), lambda a, b: sub(q, a, b), dt,
                       x, y, z, sigma, rho, beta)
        out.append(x & 0xFF)
    return out


KEYS = {
    "a": ((0.3141592, 3.99), (0.1, 0.2, 1.4, 0.3), (1.0, 1.0, 20.0, 10.0, 28.0, 2.67), 128),
    "b": ((0.7182818, 3.61), (-0.6, 0.05, 1.37, 0.27), (-8.5, 3.25, 31.0, 9.8, 27.5, 2.55), 37),
    "c": ((0.0123456, 3.9999), (0.9, -0.3, 1.39, 0.29), (15.0, -19.5, 0.5, 10.5, 30.0, 2.8), 250),
}


def key_words(params):
    (lx, lmu), henon, lorenz, t = params
    words = [to_raw(lx, 2), to_raw(lmu, 2)]
    words += [to_raw(v, 4) for v in henon]
    words += [to_raw(v, 10) for v in lorenz]
    return words, t


def key_file(words, t):
    body = b"SOCK" + bytes([1]) + b"".join(struct.pack(">i", w) for w in words) + bytes([t])
    return body + struct.pack(">I", zlib.crc32(body) & 0xFFFFFFFF)


def main(outdir):
    out = Path(outdir)
    rng = random.Random(20261016)
    lines = ["# qformat op a b result saturated -- generated by tests/oracles/gen_fixtures.py"]
    for q, op, a, b in golden_vectors(rng, 10000):
        r, sat = fx_op(q, op, a, b)
        lines.append("%d %s %s %s %s %d" % (q, op, hex32(a), hex32(b), hex32(r), int(sat)))
    (out / "fx_golden.txt").write_text("\n".join(lines) + "\n")

    (out / "keys").mkdir(exist_ok=True)
    ks = ["# key map first-256-keystream-bytes-hex -- generated by tests/oracles/gen_fixtures.py"]
    for name, params in KEYS.items():
        words, t = key_words(params)
        (out / "keys" / (name + ".key")).write_bytes(key_file(words, t))
        ks.append("%s logistic %s" % (name, bytes(logistic_stream(words[0], words[1], 256)).hex()))
        ks.append("%s henon %s" % (name, bytes(henon_stream(*words[2:6], 256)).hex()))
        ks.append("%s lorenz %s" % (name, bytes(lorenz_stream(*words[6:12], 256)).hex()))
    (out / "keystream_golden.txt").write_text("\n".join(ks) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data")
